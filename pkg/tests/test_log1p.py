from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from errsums.cf_engine import eval_gcf, gcf_convergents, gcf_numden
from errsums.log1p import (
    HypothesisViolated,
    errsum_log1p,
    growth_limit,
    irrationality_audit,
    lemma_integral_check,
    log1p_cf_scaled_spec,
    log1p_cf_spec,
    log1p_closed_form,
    log1p_residual,
    log1p_seq,
    ode_check,
    perron_cf_spec,
    verify_recurrence,
)
from errsums.oracles import const, to_mpf

t_values = st.fractions(min_value=Fraction(-99, 100), max_value=1, max_denominator=100)


def test_sequence_examples():
    p = log1p_seq(1, 1)
    assert (p.A, p.B) == (2, 3)
    assert log1p_seq(1, 2).B == 13
    z = log1p_seq(0, 3)
    assert (z.A, z.B) == (0, 20)
    # central Delannoy numbers at t = 1
    assert [log1p_seq(1, n).B for n in range(7)] == [1, 3, 13, 63, 321, 1683, 8989]
    assert log1p_seq(Fraction(1, 2), 4).c_partial[3] == Fraction(1, 2) - Fraction(1, 8) + Fraction(1, 24)


def test_domain():
    for bad in (-1, Fraction(3, 2), 2):
        with pytest.raises(ValueError):
            log1p_seq(bad, 2)
    with pytest.raises(TypeError):
        log1p_seq(0.5, 2)


@settings(max_examples=20, deadline=None)
@given(t_values)
def test_recurrence_random_t(t):
    assert verify_recurrence(t, 50).passed


def test_recurrence_named_t():
    for t in (1, Fraction(1, 3)):
        rep = verify_recurrence(t, 50)
        assert rep.passed and rep.checked == 49 and rep.status == "proven"
    # the two-term case of the cancellation
    assert 1 * 1 - Fraction(1 * 2, 2) == 0


@pytest.mark.parametrize("t", [1, Fraction(1, 3), Fraction(-1, 2), Fraction(-7, 9)])
def test_cf_numerators_are_the_sequences(t):
    nd = gcf_numden(log1p_cf_spec(t), 30)
    for n in range(31):
        pair = log1p_seq(t, n)
        assert nd[n] == (pair.A, pair.B)
    scaled = list(gcf_convergents(log1p_cf_scaled_spec(t), 30))
    for n in range(1, 31):
        if log1p_seq(t, n).B:
            assert scaled[n - 1] == log1p_seq(t, n).A / log1p_seq(t, n).B


def test_perron_fraction_smoke():
    with mp.workprec(128):
        for t in (Fraction(1, 2), Fraction(1)):
            v = eval_gcf(perron_cf_spec(t), 80)
            assert abs(to_mpf(v) - mpmath.log(1 + to_mpf(t))) < mpf("1e-25")


def test_integral_identity_examples():
    chk = lemma_integral_check(1, 1)
    with mp.workprec(128):
        assert abs(chk.exact - (3 * const("log2", 128) - 2)) < mpf("1e-30")
    assert chk.agrees
    assert mpmath.nstr(chk.exact, 6) == "0.0794415"
    neg = lemma_integral_check(Fraction(-1, 2), 2)
    assert neg.exact < 0 and neg.quadrature < 0 and neg.agrees
    for t in (Fraction(1, 5), Fraction(-3, 4)):
        zero = lemma_integral_check(t, 0)
        with mp.workprec(128):
            assert abs(zero.exact - mpmath.log(1 + to_mpf(t))) < mpf("1e-35")
        assert zero.agrees


@pytest.mark.parametrize("t,n", [(Fraction(1, 3), 7), (Fraction(-9, 10), 20), (1, 25)])
def test_integral_identity_wider(t, n):
    assert lemma_integral_check(t, n).agrees


def test_errsum_at_one_is_quarter_pi():
    rep = errsum_log1p(1, prec=256, tol="1e-45")
    with mp.workprec(256):
        assert abs(rep.value - const("pi", 256) / 4) < mpf("1e-40")
    assert rep.converged


def test_errsum_zero_and_half():
    assert errsum_log1p(0).value == 0
    assert log1p_closed_form(0) == 0
    a = errsum_log1p(Fraction(1, 2), prec=256, tol="1e-35")
    b = errsum_log1p(Fraction(1, 2), "closed_form", prec=256)
    with mp.workprec(256):
        assert abs(a.value - b.value) < mpf("1e-30")
    assert mpmath.nstr(b.value, 4) == "0.4197"


@settings(max_examples=8, deadline=None)
@given(t_values.filter(lambda t: t > Fraction(-9, 10)))
def test_series_matches_closed_form(t):
    a = errsum_log1p(t, prec=192, tol="1e-32")
    with mp.workprec(192):
        assert abs(a.value - log1p_closed_form(t, 192)) < mpf("1e-30")


@pytest.mark.parametrize("t", [Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 5), 1])
def test_signed_is_sign_times_absolute(t):
    s = errsum_log1p(t, prec=128, tol="1e-25")
    a = errsum_log1p(t, prec=128, tol="1e-25", sign_mode="absolute")
    sign = 1 if t > 0 else -1
    with mp.workprec(128):
        assert abs(s.value - sign * a.value) < mpf("1e-30")
    for n in range(10):
        assert (log1p_residual(t, n) > 0) == (t > 0)


def test_ode():
    assert ode_check([Fraction(1, 2)], Fraction(1, 10**6)).max_residual < 1e-10
    coarse = ode_check([Fraction(1, 2), Fraction(-1, 3)], Fraction(1, 2**8)).residuals
    fine = ode_check([Fraction(1, 2), Fraction(-1, 3)], Fraction(1, 2**9)).residuals
    for c, f in zip(coarse, fine):
        assert 3.8 < c / f < 4.2
    # at t = 0: f(0) = 0 and f'(0) = 1, so 3 f'(0) - 3 vanishes
    with mp.workprec(128):
        d = mpmath.diff(_f, 0)
        assert abs(d - 1) < mpf("1e-20")
    with pytest.raises(ValueError):
        ode_check([1], Fraction(1, 100))


def _f(x):
    # closed form on mpf arguments, for numeric differentiation
    s = mpmath.sqrt(3 + 2 * x - x * x)
    return 2 / s * (mpmath.atan((1 + x) / s) - mpmath.atan((1 - x) / s))


def test_irrationality_audit():
    rep = irrationality_audit(1, 1, 30)
    assert rep.all_positive and rep.all_integral
    assert rep.final < 1e-6
    assert rep.blocks_decreasing
    assert rep.decreasing_from is not None
    assert all(isinstance(r.scaled_B, int) and isinstance(r.scaled_A, int) for r in rep.rows)
    half = irrationality_audit(1, 2, 20)
    assert half.all_integral and half.all_positive and half.blocks_decreasing
    with pytest.raises(HypothesisViolated):
        irrationality_audit(2, 1, 10)
    with pytest.raises(HypothesisViolated):
        irrationality_audit(5, 6, 10)
    with pytest.raises(ValueError):
        irrationality_audit(-1, 2, 10)


@pytest.mark.parametrize("t", [1, Fraction(1, 2)])
def test_growth_ratio(t):
    # the ratio approaches its limit like alpha (1 - 1/(2n)); within 0.01 from n = 400 on
    alpha = growth_limit(t)
    with mp.workprec(64):
        r200 = to_mpf(log1p_seq(t, 201).B / log1p_seq(t, 200).B)
        assert abs(r200 - alpha * (1 - mpf(1) / 400)) < 1e-3
        r400 = to_mpf(log1p_seq(t, 401).B / log1p_seq(t, 400).B)
        assert abs(r400 - alpha) < 0.01


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=500), t_values)
def test_summed_kernel_identity(x, t):
    # sum_m (t^2 x(1-x)/(1+tx))^m / (1+tx) collapses to 1/(1 + t(1-t)x + t^2 x^2)
    q = t * t * x * (1 - x) / (1 + t * x)
    assert 1 / ((1 + t * x) * (1 - q)) == 1 / (1 + t * (1 - t) * x + t * t * x * x)
