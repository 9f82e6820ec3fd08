from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from errsums.oracles import (
    OracleError,
    QuadratureError,
    QuadratureSpec,
    const,
    fn_eval,
    integrate,
)


def close(a, b, tol):
    with mp.workprec(600):
        return abs(mpf(a) - mpf(b)) < tol


def test_const_examples():
    assert mpmath.nstr(const("pi", 128), 21) == "3.14159265358979323846"
    assert mpmath.nstr(const("zeta3", 128), 21, strip_zeros=False) == "1.20205690315959428540"
    assert mpmath.nstr(const("golden_rho", 64), 11) == "1.6180339887"


@pytest.mark.parametrize("prec", [64, 256, 512])
def test_euler_maclaurin_zetas_against_mpmath(prec):
    with mp.workprec(prec + 20):
        z2 = mp.pi**2 / 6
        z3 = mpmath.zeta(3)
    ulp = mpf(2) ** (-prec + 2)
    assert close(const("zeta2", prec), z2, ulp * 2)
    assert close(const("zeta3", prec), z3, ulp * 2)


def test_log_rho_and_log2():
    with mp.workprec(300):
        assert abs(const("log_rho", 256) - mpmath.log((1 + mpmath.sqrt(5)) / 2)) < mpf(2) ** -250
        assert abs(const("log2", 256) - fn_eval("log1p", 1, 256)) < mpf(2) ** -250


def test_unknown_names_and_low_precision():
    with pytest.raises(OracleError):
        const("catalan", 128)
    with pytest.raises(OracleError):
        const("pi", 16)
    with pytest.raises(OracleError):
        fn_eval("gamma", 1, 64)


def test_fn_eval_examples_and_domains():
    assert mpmath.nstr(fn_eval("erf", 1, 128), 20) == "0.84270079294971486934"
    with mp.workprec(260):
        assert abs(fn_eval("arctan", 1, 256) - const("pi", 256) / 4) < mpf(2) ** -250
    assert mpmath.nstr(fn_eval("log1p", Fraction(1), 128), 20) == "0.69314718055994530942"
    with pytest.raises(OracleError):
        fn_eval("log1p", -1, 64)
    with pytest.raises(OracleError):
        fn_eval("arccos", Fraction(3, 2), 64)
    with pytest.raises(OracleError):
        fn_eval("sqrt", -2, 64)


def test_precision_doubling_keeps_digits():
    for name in ["pi", "e", "zeta2", "zeta3", "log_rho"]:
        lo = const(name, 128)
        hi = const(name, 256)
        assert mpmath.nstr(lo, 30) == mpmath.nstr(hi, 30)


def test_gaussian_integral():
    r = integrate(lambda t: np.exp(-t * t), QuadratureSpec(1, 20, 0, (None,)))
    assert abs(r.value - mpf("0.74682413281242702540")) < 1e-14
    assert r.error < 1e-12


def test_arctan_integrand():
    r = integrate(lambda x: 1 / (1 + x * x), QuadratureSpec(1, 16, 0, (None,)))
    assert abs(r.value - mpmath.pi / 4) < 1e-14


@pytest.mark.parametrize("z", [Fraction(1, 2), None, Fraction(1)])
def test_erf_against_quadrature(z):
    zf = float(z) if z is not None else 2**-0.5
    zq = z if z is not None else mpmath.sqrt(mpf(1) / 2)
    r = integrate(lambda t: np.exp(-t * t), QuadratureSpec(1, 20, 0, (None,)), 0.0, zf)
    expect = fn_eval("erf", zq, 128) * mpmath.sqrt(const("pi", 128)) / 2
    assert abs(r.value - expect) < max(r.error, 1e-15)


def test_singular_double_integral():
    r = integrate(lambda x, y: 1 / (1 + x * x * y * y - x * y * y - x * x * y), QuadratureSpec(2, 20, 20))
    assert abs(r.value - mpf("1.5832522167")) < 1e-6
    assert r.error < 1e-6


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=12), st.sampled_from([1, 2, 3]))
def test_gauss_legendre_exact_on_polynomials(coeffs, dim):
    # one Gauss panel with n nodes is exact up to degree 2n - 1
    n = (len(coeffs) + 1) // 2 + 1
    poly = np.polynomial.Polynomial(coeffs)
    exact_1d = sum(Fraction(c, k + 1) for k, c in enumerate(coeffs))
    spec = QuadratureSpec(dim, n, 0, (None,) * dim)
    if dim == 1:
        r = integrate(lambda x: poly(x), spec)
    elif dim == 2:
        r = integrate(lambda x, y: poly(x) * poly(y), spec)
    else:
        r = integrate(lambda x, y, z: poly(x) * poly(y) * poly(z), spec)
    exact = exact_1d**dim
    assert abs(float(r.value) - float(exact)) <= 1e-12 * max(1, abs(float(exact)))


def test_non_finite_sample_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.where(x > 0.5, np.inf, 1.0), QuadratureSpec(1, 4, 0, (None,)))


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(4)
    with pytest.raises(ValueError):
        QuadratureSpec(1, nodes=1)
    with pytest.raises(ValueError):
        QuadratureSpec(2, corner=(1,))
