from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from errsums.apery import (
    CONSTANTS,
    apery_cf_spec,
    apery_pair,
    apery_residual,
    errsum_apery,
    hyp_multisum,
    integral_crosscheck,
    multisum_term,
    verify_apery_recurrence,
)
from errsums.cf_engine import eval_gcf, gcf_convergents

# printed values carry 10 decimals, truncated
PRINTED = {
    ("zeta2", "signed"): "1.5832522167",
    ("zeta2", "absolute"): "1.7141459142",
    ("zeta3", "absolute"): "1.2124982529",
}


def brute_zeta2_den(n):
    # B_n straight from its definition with Python ints
    from math import comb

    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def test_pair_examples():
    p = apery_pair("zeta2", 1)
    assert (p.num, p.den) == (5, 3)
    p2 = apery_pair("zeta2", 2)
    assert (p2.num, p2.den) == (Fraction(125, 4), 19)
    assert p2.num / p2.den == Fraction(125, 76) == eval_gcf(apery_cf_spec("zeta2"), 2)
    q = apery_pair("zeta3", 1)
    assert (q.num, q.den) == (6, 5)
    assert apery_pair("zeta3", 2).den == 73
    assert [apery_pair("zeta2", n).den for n in range(5)] == [1, 3, 19, 147, 1251]
    assert [apery_pair("zeta2", n).den for n in range(20)] == [brute_zeta2_den(n) for n in range(20)]
    with pytest.raises(ValueError):
        apery_pair("zeta4", 1)


@pytest.mark.parametrize("constant", CONSTANTS)
def test_ratios_are_convergents(constant):
    conv = list(gcf_convergents(apery_cf_spec(constant), 40))
    for n in range(1, 41):
        pair = apery_pair(constant, n)
        assert pair.num / pair.den == conv[n - 1]
        assert (pair.num * pair.clearing_factor).denominator == 1
        assert pair.den > 0


@pytest.mark.parametrize("constant", CONSTANTS)
def test_recurrence(constant):
    rep = verify_apery_recurrence(constant, 50)
    assert rep.passed and rep.checked == 49


def test_residual_signs_and_first_values():
    for n in range(41):
        r2 = apery_residual("zeta2", n)
        assert (r2 > 0) == (n % 2 == 0)
        assert apery_residual("zeta3", n) > 0
    with mp.workprec(64):
        assert abs(apery_residual("zeta2", 0) - mpmath.pi**2 / 6) < mpf("1e-15")
    assert mpmath.nstr(abs(apery_residual("zeta2", 1)), 4) == "0.0652"
    assert mpmath.nstr(abs(apery_residual("zeta2", 2)), 4) == "0.003747"


def test_absolute_partial_sums_monotone():
    partial = mpf(0)
    prev = None
    for n in range(15):
        partial += abs(apery_residual("zeta2", n))
        if prev is not None:
            assert partial > prev
        prev = partial
    assert partial < mpf(PRINTED[("zeta2", "absolute")]) + mpf("1e-10")


@pytest.mark.parametrize("key", list(PRINTED))
def test_errsum_matches_truncated_printed_value(key):
    constant, mode = key
    rep = errsum_apery(constant, mode, 256, "1e-40")
    assert rep.converged
    diff = rep.value - mpf(PRINTED[key])
    assert 0 <= diff < 1e-10
    with mp.workprec(128):
        truncated = mpmath.floor(rep.value * 10**10)
    assert truncated == int(PRINTED[key].replace(".", ""))


def test_zeta3_modes_agree():
    a = errsum_apery("zeta3", "signed", 256, "1e-40")
    b = errsum_apery("zeta3", "absolute", 256, "1e-40")
    assert a.value == b.value


def test_multisum_leading_terms():
    assert multisum_term("zeta3", 0, 0) == Fraction(1, 2)
    assert multisum_term("zeta2", 0, 0) == 1
    # row n = 0 of the zeta(2) series is the Basel series
    assert all(multisum_term("zeta2", 0, k) == Fraction(1, (k + 1) ** 2) for k in range(50))
    # zeta(3) row 0: sum_l (-1)^l C(k,l)/(l+1)^2 / (k+1) = H_{k+1}/(k+1)^2
    for k in range(12):
        h = sum(Fraction(1, j) for j in range(1, k + 2))
        assert multisum_term("zeta3", 0, k) == h / (k + 1) ** 2 / 2


def test_zeta2_rows_equal_residuals():
    # each row of the series is one |B_n zeta(2) - A_n|
    with mp.workprec(64):
        for n in range(5):
            row = hyp_multisum("zeta2", "absolute", n + 1, None) - (
                hyp_multisum("zeta2", "absolute", n, None) if n else 0
            )
            assert abs(row - abs(apery_residual("zeta2", n, 64))) < mpf("1e-15")


def test_zeta2_multisum_truncation():
    absolute = hyp_multisum("zeta2", "absolute", 40, 400)
    assert abs(absolute - mpf(PRINTED[("zeta2", "absolute")])) < 1e-4
    signed = hyp_multisum("zeta2", "signed", 40, 400)
    assert abs(signed - mpf(PRINTED[("zeta2", "signed")])) < 1e-4
    raw = hyp_multisum("zeta2", "absolute", 40, 400, tail_correction=False)
    assert raw < absolute


@pytest.mark.slow
def test_zeta3_multisum_grows_toward_value():
    values = [hyp_multisum("zeta3", "absolute", n, k) for n, k in [(3, 20), (6, 60), (10, 120)]]
    assert values[0] < values[1] < values[2] < mpf(PRINTED[("zeta3", "absolute")])


def test_zeta3_multisum_small():
    a = hyp_multisum("zeta3", "absolute", 2, 10)
    b = hyp_multisum("zeta3", "absolute", 3, 20)
    assert 0.5 < a < b < 1.2125
    with pytest.raises(ValueError):
        hyp_multisum("zeta3", "absolute", 0, 5)


@pytest.mark.parametrize(
    "which,key,tol",
    [
        ("zeta2_signed", ("zeta2", "signed"), 1e-5),
        ("zeta2_absolute", ("zeta2", "absolute"), 1e-5),
        ("zeta3", ("zeta3", "absolute"), 1e-3),
    ],
)
def test_integral_crosscheck(which, key, tol):
    r = integral_crosscheck(which)
    direct = errsum_apery(key[0], key[1], 128, "1e-30").value
    assert abs(r.value - direct) < tol
    assert abs(r.value - direct) < max(r.error * 10, 1e-12)
