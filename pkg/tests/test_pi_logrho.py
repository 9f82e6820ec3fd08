import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from errsums.cf_engine import eval_gcf, gcf_convergents
from errsums.numkernel import binomial, pochhammer
from errsums.oracles import const
from errsums.pi_logrho import (
    errsum_logrho,
    errsum_pi,
    hyp2f1_exact_series,
    inverse_pi_cf_spec,
    logrho_closed_form,
    logrho_residual,
    logrho_residual_hypergeometric,
    logrho_residual_quadrature,
    logrho_seq,
    logrho_u_integral,
    peak_of_pi_kernel,
    pi_closed_form,
    pi_residual,
    pi_residual_bound,
    pi_residual_quadrature,
    pi_seq,
    pi_u_integral,
    sqrt5_over_logrho_cf_spec,
)


def literal_pi_pair(n):
    """The double sums exactly as written, no rearrangement."""
    scale = Fraction(2 * 4 ** (n + 1), math.factorial(n))
    b = a = Fraction(0)
    for k in range(n + 1):
        w = binomial(n, k) * (2 * k + 3) * pochhammer(Fraction(2 * k + 5, 2), n)
        b += w
        for nu in range(k + 1):
            a += (-1) ** (k + nu) * w / (2 * k - 2 * nu + 1)
    return scale * a + (-4) ** (n + 1), scale * b


def literal_logrho_pair(n):
    d = c = Fraction(0)
    for k in range(n + 1):
        w = (-1) ** (n + k) * binomial(n, k) * (2 * k + 3) * pochhammer(Fraction(2 * k + 5, 2), n)
        d += w * 5**k
        for nu in range(k + 1):
            c += w * Fraction(5**nu, 2 * k - 2 * nu + 1)
    return 4**n + Fraction(4 ** (n + 1), math.factorial(n)) * c, Fraction(5 * 4 ** (n + 1), math.factorial(n)) * d


def test_pi_seq_examples():
    p0 = pi_seq(0)
    assert (p0.A, p0.B) == (20, 24)
    assert p0.B / (4 * p0.A) == Fraction(3, 10)
    p1 = pi_seq(1)
    assert (p1.B / 4).denominator == 1
    assert p1.A.denominator != 1
    assert pi_seq(2).B / (4 * pi_seq(2).A) == eval_gcf(inverse_pi_cf_spec(), 3)


@pytest.mark.parametrize("n", range(8))
def test_rearranged_sums_match_literal(n):
    assert (pi_seq(n).A, pi_seq(n).B) == literal_pi_pair(n)
    assert (logrho_seq(n).C, logrho_seq(n).D) == literal_logrho_pair(n)


def test_logrho_seq_examples():
    q0 = logrho_seq(0)
    assert (q0.C, q0.D) == (13, 60)
    assert logrho_seq(1).D / logrho_seq(1).C == eval_gcf(sqrt5_over_logrho_cf_spec(), 2)
    assert logrho_seq(2).D / logrho_seq(2).C == eval_gcf(sqrt5_over_logrho_cf_spec(), 3)


def test_first_partials():
    assert next(gcf_convergents(inverse_pi_cf_spec(), 1)) == Fraction(3, 10)
    assert next(gcf_convergents(sqrt5_over_logrho_cf_spec(), 1)) == Fraction(60, 13)
    assert inverse_pi_cf_spec().term(3) == (-110, 171)
    assert sqrt5_over_logrho_cf_spec().term(3) == (-110, 522)


def test_convergent_identities_to_40():
    pi_conv = list(gcf_convergents(inverse_pi_cf_spec(), 41))
    lr_conv = list(gcf_convergents(sqrt5_over_logrho_cf_spec(), 41))
    for n in range(41):
        p = pi_seq(n)
        assert p.B / (4 * p.A) == pi_conv[n]
        assert (p.B / 4).denominator == 1
        q = logrho_seq(n)
        assert q.D / q.C == lr_conv[n]
        assert q.D.denominator == 1


def test_pi_residual_positive_decreasing_and_bounded():
    prev = None
    for n in range(31):
        r = pi_residual(n)
        assert r > 0
        assert r < pi_residual_bound(n, base="peak")
        if prev is not None:
            assert r < prev
        prev = r
    assert pi_residual(0) < 8 * (mpf(10) / 3 - const("pi", 64)) * mpf(3) / 2


def test_printed_bound_base_is_too_small():
    # q = 6 - 4 sqrt 2 is half the kernel's peak; the bound then fails early
    assert pi_residual(2) > pi_residual_bound(2, base="half")
    t_star, peak = peak_of_pi_kernel()
    with mp.workprec(128):
        assert abs(t_star - (2 - mpmath.sqrt(2))) < mpf(2) ** -100
        assert abs(peak - 2 * (6 - 4 * mpmath.sqrt(2))) < mpf(2) ** -100


def test_pi_residual_ratio_approaches_peak():
    ratio = pi_residual(200) / pi_residual(199)
    assert abs(ratio - (12 - 8 * mpmath.sqrt(2))) < 0.01


@pytest.mark.parametrize("n", [0, 5])
def test_pi_residual_quadrature(n):
    q = pi_residual_quadrature(n)
    assert abs(q.value - pi_residual(n)) < max(q.error, 1e-12)


@pytest.mark.parametrize("n", [0, 1, 4, 10])
def test_logrho_residual_three_routes(n):
    direct = logrho_residual(n)
    hyp = logrho_residual_hypergeometric(n)
    assert direct > 0
    with mp.workprec(256):
        assert abs(direct - hyp) < mpf("1e-30") * max(1, abs(direct))
    q = logrho_residual_quadrature(n)
    assert abs(q.value - direct) < max(q.error, 1e-13)


def test_logrho_residual_n0_value():
    with mp.workprec(128):
        expected = 13 - 60 * mpmath.log((1 + mpmath.sqrt(5)) / 2) / mpmath.sqrt(5)
        assert abs(logrho_residual(0) - expected) < mpf("1e-35")
    assert mpmath.nstr(logrho_residual(0), 5) == "0.087732"


def test_pochhammer_simplification():
    for n in range(51):
        lhs = pochhammer(Fraction(5, 2), n) / pochhammer(Fraction(5, 2), 2 * n + 1)
        assert lhs == 1 / pochhammer(Fraction(2 * n + 5, 2), n + 1)
    with mp.workprec(200):
        for n in range(20):
            g = mpmath.gamma(2 * n + mpf(7) / 2) / mpmath.gamma(n + mpf(3) / 2)
            r = (n + mpf(3) / 2) * mpmath.rf(n + mpf(5) / 2, n + 1)
            assert abs(g / r - 1) < mpf(2) ** -190


def test_hyp2f1_against_mpmath():
    with mp.workprec(200):
        for n in (0, 3, 12):
            mine = hyp2f1_exact_series(n + 1, n + 2, Fraction(4 * n + 7, 2), Fraction(-1, 4), 192)
            ref = mpmath.hyp2f1(n + 1, n + 2, mpf(4 * n + 7) / 2, mpf(-1) / 4)
            assert abs(mine / ref - 1) < mpf(2) ** -180
    with pytest.raises(ValueError):
        hyp2f1_exact_series(1, 1, 2, 1)


def test_errsum_pi():
    rep = errsum_pi(256, "1e-30")
    assert rep.converged
    assert abs(rep.value - mpf("-5.4333111067784")) < 5e-13
    with mp.workprec(256):
        assert abs(rep.value - pi_closed_form(256)) < rep.tail_bound + mpf("1e-30")
    absolute = errsum_pi(256, "1e-30", "absolute")
    with mp.workprec(256):
        assert abs(rep.value + absolute.value) < mpf("1e-40")


def test_errsum_logrho():
    rep = errsum_logrho(256, "1e-40")
    assert abs(rep.value - mpf("-0.1210649459927")) < 5e-13
    with mp.workprec(256):
        assert abs(rep.value - logrho_closed_form(256)) < rep.tail_bound + mpf("1e-40")
    absolute = errsum_logrho(256, "1e-40", "absolute")
    with mp.workprec(256):
        assert abs(rep.value + absolute.value) < mpf("1e-45")


def test_u_integrals():
    pu = pi_u_integral()
    assert abs(pu.value - pi_closed_form(128)) < max(pu.error, 1e-13)
    lu = logrho_u_integral()
    # the integral is positive; the error sum is its negative
    assert lu.value > 0
    assert abs(lu.value + logrho_closed_form(128)) < max(lu.error, 1e-13)


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=1000).filter(lambda t: 0 < t < 1))
def test_kernel_summation_identity(t):
    # sum_m (m + 3/2) u^m in closed form, with u = 4t(1-t)/(2-t) < 1
    u = 4 * t * (1 - t) / (2 - t)
    series_closed = u / (1 - u) ** 2 + Fraction(3, 2) / (1 - u)
    rational = (2 - t) * (4 * t * t - 7 * t + 6) / (2 * (4 * t * t - 5 * t + 2) ** 2)
    assert series_closed == rational
