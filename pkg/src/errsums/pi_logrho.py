"""Split-denominator error sums for pi and for log(rho)/sqrt(5).

Both families come from continued fractions whose convergents are written
as ratios of explicit binomial/Pochhammer sums.  The residuals decay
geometrically (ratios near 0.69 for pi and 0.23 for log rho), so the error sums
converge quickly and can be compared with closed forms built from logarithms
and arccos.

Sign convention: the residuals A_n - pi B_n/4 and C_n - D_n log(rho)/sqrt(5)
are positive, so the error sums with terms ``B_n/4 * pi - A_n`` and
``D_n * log(rho)/sqrt(5) - C_n`` are negative and match the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mp, mpf

from .cf_engine import ErrorSumReport, ErrorSumSpec, GcfSpec, accumulate
from .numkernel import binomial, pochhammer
from .oracles import QuadratureResult, QuadratureSpec, const, fn_eval, integrate, to_mpf

__all__ = [
    "PiSeqPair",
    "LogRhoSeqPair",
    "pi_seq",
    "logrho_seq",
    "inverse_pi_cf_spec",
    "sqrt5_over_logrho_cf_spec",
    "pi_residual",
    "pi_residual_bound",
    "peak_of_pi_kernel",
    "pi_residual_quadrature",
    "logrho_residual",
    "logrho_residual_hypergeometric",
    "logrho_residual_quadrature",
    "hyp2f1_exact_series",
    "errsum_pi",
    "errsum_logrho",
    "pi_closed_form",
    "logrho_closed_form",
    "pi_u_integral",
    "logrho_u_integral",
]


@dataclass(frozen=True)
class PiSeqPair:
    n: int
    A: Fraction
    B: Fraction


@dataclass(frozen=True)
class LogRhoSeqPair:
    n: int
    C: Fraction
    D: Fraction


def _half_shift_poch(k: int, n: int) -> Fraction:
    # (k + 5/2)_n
    return pochhammer(Fraction(2 * k + 5, 2), n)


@lru_cache(maxsize=None)
def _leibniz_partial(k: int) -> Fraction:
    """sum_{j<=k} (-1)^j / (2j+1)."""
    if k < 0:
        return Fraction(0)
    return _leibniz_partial(k - 1) + Fraction((-1) ** k, 2 * k + 1)


@lru_cache(maxsize=None)
def _fifth_partial(k: int) -> Fraction:
    """sum_{j<=k} 5^-j / (2j+1)."""
    if k < 0:
        return Fraction(0)
    return _fifth_partial(k - 1) + Fraction(1, 5**k * (2 * k + 1))


@lru_cache(maxsize=None)
def pi_seq(n: int) -> PiSeqPair:
    """Exact A_n, B_n; B_n / (4 A_n) is the n-th convergent for 1/pi.

    The inner alternating sum over nu collapses to a partial Leibniz sum.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    scale = Fraction(2 * 4 ** (n + 1), math.factorial(n))
    b_sum = Fraction(0)
    a_sum = Fraction(0)
    for k in range(n + 1):
        w = binomial(n, k) * (2 * k + 3) * _half_shift_poch(k, n)
        b_sum += w
        a_sum += w * _leibniz_partial(k)
    return PiSeqPair(n, scale * a_sum + (-4) ** (n + 1), scale * b_sum)


@lru_cache(maxsize=None)
def logrho_seq(n: int) -> LogRhoSeqPair:
    """Exact C_n, D_n; D_n / C_n is the n-th convergent for sqrt(5)/log(rho)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d_sum = Fraction(0)
    c_sum = Fraction(0)
    for k in range(n + 1):
        w = (-1) ** (n + k) * binomial(n, k) * (2 * k + 3) * _half_shift_poch(k, n) * 5**k
        d_sum += w
        c_sum += w * _fifth_partial(k)
    d = Fraction(5 * 4 ** (n + 1), math.factorial(n)) * d_sum
    c = 4**n + Fraction(4 ** (n + 1), math.factorial(n)) * c_sum
    return LogRhoSeqPair(n, c, d)


# ------------------------------------------------------------ CFs


def _sextic(m: int) -> Fraction:
    return Fraction(m * (m - 1) * (2 * m - 1) * (2 * m + 1) * (4 * m - 5) * (4 * m + 3), 9)


def inverse_pi_cf_spec() -> GcfSpec:
    """3/10 - 14/25 - 110/171 - ...; the n-th convergent sits at depth n + 1."""

    def term(n: int):
        if n == 1:
            return Fraction(3), Fraction(10)
        if n == 2:
            return Fraction(-14), Fraction(25)
        m = n - 1
        return -_sextic(m), Fraction((4 * m + 1) * (4 * m * m + 2 * m - 1))

    return GcfSpec(Fraction(0), term, "1/pi")


def sqrt5_over_logrho_cf_spec() -> GcfSpec:
    """60/13 - 7/80 - 110/522 - ...; the n-th convergent sits at depth n + 1."""

    def term(n: int):
        if n == 1:
            return Fraction(60), Fraction(13)
        if n == 2:
            return Fraction(-7), Fraction(80)
        m = n - 1
        return -_sextic(m), Fraction(2 * (4 * m + 1) * (6 * m * m + 3 * m - 1))

    return GcfSpec(Fraction(0), term, "sqrt5/log(rho)")


# ------------------------------------------------------------ residuals


def _bits(x: Fraction) -> int:
    return max(abs(x.numerator).bit_length() - x.denominator.bit_length(), 0) + 8


def pi_residual(n: int, prec: int = 256) -> mpf:
    """A_n - pi B_n / 4, with enough extra bits to absorb the cancellation."""
    pair = pi_seq(n)
    wp = prec + _bits(pair.A) + _bits(pair.B)
    with mp.workprec(wp):
        v = to_mpf(pair.A) - const("pi", wp) * to_mpf(pair.B) / 4
    with mp.workprec(prec):
        return +v


def pi_residual_bound(n: int, prec: int = 256, base: str = "peak") -> mpf:
    """8 (10/3 - pi)(n + 3/2) q^n, an upper bound for the pi residual.

    ``base="peak"`` uses q = 12 - 8 sqrt 2, the maximum of 4t(1-t)/(2-t) on
    [0, 1] (reached at t = 2 - sqrt 2), which makes the bound valid for every
    n.  ``base="half"`` uses q = 6 - 4 sqrt 2; that version undercuts the
    true residual from n = 2 on and is kept only so the discrepancy can be
    shown.
    """
    with mp.workprec(prec + 16):
        pi = const("pi", prec + 16)
        q = 6 - 4 * mpmath.sqrt(2)
        if base == "peak":
            q *= 2
        elif base != "half":
            raise ValueError("base must be 'peak' or 'half'")
        v = 8 * (mpf(10) / 3 - pi) * (n + mpf(3) / 2) * q**n
    with mp.workprec(prec):
        return +v


def peak_of_pi_kernel(prec: int = 128) -> tuple[mpf, mpf]:
    """Location and value of the maximum of 4t(1-t)/(2-t) on [0, 1], found numerically."""
    with mp.workprec(prec):
        g = lambda t: 4 * t * (1 - t) / (2 - t)
        dg = lambda t: mpmath.diff(g, t)
        t_star = mpmath.findroot(dg, mpf("0.6"))
        return t_star, g(t_star)


def pi_residual_quadrature(n: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """4(n+3/2) * integral of t sqrt(1-t)/(2-t) (4t(1-t)/(2-t))^n over [0, 1]."""
    spec = spec or QuadratureSpec(1, 20, 12, (1,))

    def f(t):
        return t * np.sqrt(1 - t) / (2 - t) * (4 * t * (1 - t) / (2 - t)) ** n

    r = integrate(f, spec)
    factor = 4 * (n + 1.5)
    return QuadratureResult(r.value * factor, r.error * factor, r.samples)


def logrho_residual(n: int, prec: int = 256) -> mpf:
    """C_n - D_n log(rho) / sqrt(5)."""
    pair = logrho_seq(n)
    wp = prec + _bits(pair.C) + _bits(pair.D)
    with mp.workprec(wp):
        alpha = const("log_rho", wp) / mpmath.sqrt(5)
        v = to_mpf(pair.C) - to_mpf(pair.D) * alpha
    with mp.workprec(prec):
        return +v


def hyp2f1_exact_series(a, b, c, z, prec: int = 256) -> mpf:
    """2F1(a, b; c; z) for rational parameters and |z| < 1.

    Terms are accumulated as exact rationals, so the early growth of the
    terms (large a, b) costs no accuracy.  Summation stops once the terms
    shrink geometrically and the current one is below 2^-(prec+8) of the sum.
    """
    a, b, c, z = (Fraction(v) for v in (a, b, c, z))
    if abs(z) >= 1:
        raise ValueError("series needs |z| < 1")
    term = Fraction(1)
    total = Fraction(1)
    k = 0
    eps = Fraction(1, 2 ** (prec + 8))
    while True:
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        k += 1
        if term == 0:
            break
        if abs(ratio) < 1 and abs(term) < eps * abs(total):
            break
    with mp.workprec(prec):
        return to_mpf(total)


def logrho_residual_hypergeometric(n: int, prec: int = 256) -> mpf:
    """Pochhammer prefactor times 2F1(n+1, n+2; 2n+7/2; -1/4)."""
    prefactor = (
        pochhammer(Fraction(5, 2), n)
        * math.factorial(n + 1)
        / (4 * pochhammer(Fraction(5, 2), 2 * n + 1))
    )
    f = hyp2f1_exact_series(n + 1, n + 2, Fraction(4 * n + 7, 2), Fraction(-1, 4), prec + 16)
    with mp.workprec(prec):
        return to_mpf(prefactor) * f


def logrho_residual_quadrature(n: int, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """The same residual through the Euler integral: (n+3/2)/4 times
    integral of t^{n+1} (1-t)^{n+1/2} (1+t/4)^{-n-1} over [0, 1]."""
    spec = spec or QuadratureSpec(1, 20, 12, (1,))

    def f(t):
        return t ** (n + 1) * (1 - t) ** (n + 0.5) * (1 + t / 4) ** (-n - 1)

    r = integrate(f, spec)
    factor = (n + 1.5) / 4
    return QuadratureResult(r.value * factor, r.error * factor, r.samples)


# ------------------------------------------------------------ error sums


def _pi_term(n: int):
    pair = pi_seq(n)
    return pair.B / 4, pair.A


def _logrho_term(n: int):
    pair = logrho_seq(n)
    return pair.D, pair.C


def _logrho_target(prec: int) -> mpf:
    with mp.workprec(prec + 8):
        v = const("log_rho", prec + 8) / mpmath.sqrt(5)
    with mp.workprec(prec):
        return +v


def errsum_pi(prec: int = 256, tol="1e-40", sign_mode: str = "signed") -> ErrorSumReport:
    """Sum over n of (B_n/4) pi - A_n; every term is negative."""
    spec = ErrorSumSpec(lambda p: const("pi", p), _pi_term, sign_mode, name=f"pi_{sign_mode}")
    return accumulate(spec, tol, prec=prec)


def errsum_logrho(prec: int = 256, tol="1e-40", sign_mode: str = "signed") -> ErrorSumReport:
    """Sum over n of D_n log(rho)/sqrt(5) - C_n; every term is negative."""
    spec = ErrorSumSpec(_logrho_target, _logrho_term, sign_mode, name=f"logrho_{sign_mode}")
    return accumulate(spec, tol, prec=prec)


def pi_closed_form(prec: int = 256) -> mpf:
    """sqrt(7)/49 log((3 - sqrt 7)/(3 + sqrt 7)) - 3 pi/2 - 4/7."""
    wp = prec + 32
    with mp.workprec(wp):
        r7 = fn_eval("sqrt", 7, wp)
        v = r7 / 49 * mpmath.log((3 - r7) / (3 + r7)) - 3 * const("pi", wp) / 2 - mpf(4) / 7
    with mp.workprec(prec):
        return +v


def logrho_closed_form(prec: int = 256) -> mpf:
    """Closed form with the nested radicals, an arccos and a logarithm."""
    wp = prec + 32
    with mp.workprec(wp):
        r5 = fn_eval("sqrt", 5, wp)
        inner_log = 1 + r5 / 2 - mpmath.sqrt(4 * r5 + 5) / 2
        acos_arg = r5 / 2 - 1
        num = mpmath.sqrt(124 * r5 - 265) * mpmath.log(inner_log) - mpmath.sqrt(
            124 * r5 + 265
        ) * fn_eval("arccos", acos_arg, wp)
        v = num / (55 * mpmath.sqrt(11)) + mpf(1) / 11
    with mp.workprec(prec):
        return +v


def pi_u_integral(spec: QuadratureSpec | None = None) -> QuadratureResult:
    """-4 * integral of u^2 (1-u^2)(4u^4 - u^2 + 3)/(4u^4 - 3u^2 + 1)^2 over [0, 1]."""
    spec = spec or QuadratureSpec(1, 24, 0, (None,))

    def f(u):
        u2 = u * u
        return -4 * u2 * (1 - u2) * (4 * u2 * u2 - u2 + 3) / (4 * u2 * u2 - 3 * u2 + 1) ** 2

    return integrate(f, spec)


def logrho_u_integral(spec: QuadratureSpec | None = None) -> QuadratureResult:
    """Integral of u^2 (1-u^2)(4u^4 - 7u^2 + 15)/(4u^4 - 5u^2 + 5)^2 over [0, 1].

    Positive; the error sum is its negative.
    """
    spec = spec or QuadratureSpec(1, 24, 0, (None,))

    def f(u):
        u2 = u * u
        return u2 * (1 - u2) * (4 * u2 * u2 - 7 * u2 + 15) / (4 * u2 * u2 - 5 * u2 + 5) ** 2

    return integrate(f, spec)
