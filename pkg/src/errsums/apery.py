"""Apery's continued fractions for zeta(2) and zeta(3) and their error sums.

The sequences are the binomial sums whose ratios are the convergents; the
error sums are accumulated directly against oracle values of zeta(2) and
zeta(3), re-expressed as double/triple series with rational terms, and
cross-checked by quadrature of the rational integrands that the summed
Beukers-type integrals collapse to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .cf_engine import ErrorSumReport, ErrorSumSpec, GcfSpec, accumulate
from .numkernel import CheckReport, binomial, lcm_upto
from .oracles import QuadratureResult, QuadratureSpec, const, integrate, to_mpf

__all__ = [
    "CONSTANTS",
    "AperySeqPair",
    "apery_pair",
    "apery_cf_spec",
    "verify_apery_recurrence",
    "apery_residual",
    "errsum_apery",
    "hyp_multisum",
    "multisum_term",
    "INTEGRALS",
    "integral_crosscheck",
]

CONSTANTS = ("zeta2", "zeta3")


def _check_constant(constant: str) -> None:
    if constant not in CONSTANTS:
        raise ValueError(f"constant must be one of {CONSTANTS}, got {constant!r}")


@dataclass(frozen=True)
class AperySeqPair:
    n: int
    num: Fraction
    den: int
    constant: str

    @property
    def clearing_factor(self) -> int:
        """2 d_n^2 for zeta(2), 2 d_n^3 for zeta(3); makes ``num`` integral."""
        power = 2 if self.constant == "zeta2" else 3
        return 2 * lcm_upto(self.n) ** power


@lru_cache(maxsize=None)
def _zeta2_pair(n: int) -> AperySeqPair:
    head = 2 * sum(Fraction((-1) ** (m - 1), m * m) for m in range(1, n + 1))
    inner = Fraction(0)
    num = Fraction(0)
    den = 0
    for k in range(n + 1):
        if k:
            inner += Fraction((-1) ** (n + k - 1), k * k * binomial(n, k) * binomial(n + k, k))
        w = binomial(n, k) ** 2 * binomial(n + k, k)
        den += w
        num += w * (head + inner)
    return AperySeqPair(n, num, den, "zeta2")


@lru_cache(maxsize=None)
def _zeta3_pair(n: int) -> AperySeqPair:
    head = sum(Fraction(1, m**3) for m in range(1, n + 1))
    inner = Fraction(0)
    num = Fraction(0)
    den = 0
    for k in range(n + 1):
        if k:
            inner += Fraction((-1) ** (k - 1), 2 * k**3 * binomial(n, k) * binomial(n + k, k))
        w = (binomial(n, k) * binomial(n + k, k)) ** 2
        den += w
        num += w * (head + inner)
    return AperySeqPair(n, num, den, "zeta3")


def apery_pair(constant: str, n: int) -> AperySeqPair:
    """(A_n, B_n) for zeta(2) or (C_n, D_n) for zeta(3), from the binomial sums."""
    _check_constant(constant)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _zeta2_pair(n) if constant == "zeta2" else _zeta3_pair(n)


def apery_cf_spec(constant: str) -> GcfSpec:
    """5/(3 + 1/(25 + 16/(69 + ...))) for zeta(2); 6/(5 - 1/(117 - 64/(535 - ...))) for zeta(3)."""
    _check_constant(constant)
    if constant == "zeta2":

        def term(j: int):
            if j == 1:
                return Fraction(5), Fraction(3)
            n = j - 1
            return Fraction(n**4), Fraction(11 * n * n + 11 * n + 3)

    else:

        def term(j: int):
            if j == 1:
                return Fraction(6), Fraction(5)
            n = j - 1
            return Fraction(-(n**6)), Fraction(34 * n**3 + 51 * n * n + 27 * n + 5)

    return GcfSpec(Fraction(0), term, f"apery_{constant}")


def _recurrence_lhs(constant: str, n: int, x_prev, x, x_next):
    if constant == "zeta2":
        return (n + 1) ** 2 * x_next - (11 * n * n + 11 * n + 3) * x - n * n * x_prev
    return (n + 1) ** 3 * x_next - (34 * n**3 + 51 * n * n + 27 * n + 5) * x + n**3 * x_prev


def verify_apery_recurrence(constant: str, n_max: int) -> CheckReport:
    """Check the three-term recurrence for numerator and denominator, 1 <= n < n_max."""
    _check_constant(constant)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    pairs = [apery_pair(constant, n) for n in range(n_max + 1)]
    report = CheckReport(f"apery_recurrence({constant})", 0, proven=True)
    for n in range(1, n_max):
        for field in ("num", "den"):
            x = [getattr(pairs[n + d], field) for d in (-1, 0, 1)]
            lhs = _recurrence_lhs(constant, n, *x)
            if lhs != 0:
                report.first_failure = (field, n, lhs)
                return report
        report.checked += 1
    return report


def apery_residual(constant: str, n: int, prec: int = 256) -> mpf:
    """B_n zeta(2) - A_n, resp. D_n zeta(3) - C_n."""
    pair = apery_pair(constant, n)
    wp = prec + pair.den.bit_length() + 16
    with mp.workprec(wp):
        v = pair.den * const(constant, wp) - to_mpf(pair.num)
    with mp.workprec(prec):
        return +v


def _term(constant: str):
    def term(n: int):
        pair = apery_pair(constant, n)
        return pair.den, pair.num

    return term


def errsum_apery(constant: str, sign_mode: str = "absolute", prec: int = 256, tol="1e-40") -> ErrorSumReport:
    """Sum of B_n zeta(2) - A_n (signs alternate) or D_n zeta(3) - C_n (all positive)."""
    _check_constant(constant)
    spec = ErrorSumSpec(lambda p: const(constant, p), _term(constant), sign_mode, name=f"{constant}_{sign_mode}")
    return accumulate(spec, tol, prec=prec)


# ------------------------------------------------------------ rational series


def multisum_term(constant: str, n: int, k: int) -> Fraction:
    """One (n, k) summand of the rational series, sign mode absolute, zeta(3) halved."""
    _check_constant(constant)
    if constant == "zeta2":
        return _zeta2_row_term(n, k)
    return _zeta3_row_term(n, k) / 2


def _zeta2_row_term(n: int, k: int) -> Fraction:
    return Fraction(binomial(n + k, n), (2 * n + k + 1) ** 2 * binomial(2 * n + k, n) ** 2)


def _zeta3_row_term(n: int, k: int) -> Fraction:
    inner = sum(
        Fraction(
            (-1) ** l * binomial(k, l) * binomial(n + l, n),
            (2 * n + l + 1) ** 2 * binomial(2 * n + l, n) ** 2,
        )
        for l in range(k + 1)
    )
    return inner / ((2 * n + k + 1) * binomial(2 * n + k, n))


def _row_tail(n: int, k_from: int, prec: int) -> mpf:
    """Sum over k >= k_from of the zeta(2) row term, which decays like k^-(n+2).

    Skipped when the integral estimate k * term / (n+1) is below 2^-prec;
    otherwise Euler-Maclaurin summation (Richardson extrapolation loses
    digits once the start index is in the hundreds).
    """
    first = to_mpf(_zeta2_row_term(n, k_from))
    if first * k_from / (n + 1) < mpf(2) ** (-prec - 8):
        return mpf(0)

    def f(j):
        k = j + k_from
        return mpmath.binomial(n + k, n) / ((2 * n + k + 1) ** 2 * mpmath.binomial(2 * n + k, n) ** 2)

    return mpmath.nsum(f, [0, mpmath.inf], method="euler-maclaurin")


def default_inner_cutoff(n: int) -> int:
    return max(64, 8 * n)


def hyp_multisum(
    constant: str,
    sign_mode: str = "absolute",
    N_outer: int = 40,
    K_inner: int | None = None,
    prec: int = 64,
    tail_correction: bool = True,
) -> mpf:
    """Truncated rational double (zeta(2)) or triple (zeta(3)) series for the error sums.

    zeta(2): sum over n < N_outer, k <= K of eps_n C(n+k,n)/((2n+k+1)^2 C(2n+k,n)^2)
    with eps_n = (-1)^n in signed mode.  zeta(3): half the triple sum with the
    alternating inner sum over l <= k, every term rational.

    The inner sums decay only polynomially in k (like 1/k^2 in the first
    row), so for zeta(2) the remainder of each row past K is added by
    numerical summation unless ``tail_correction`` is off.  The zeta(3)
    rows are truncated as they stand.  K defaults to max(64, 8n) per row.
    The result is a validation value, so the default precision is modest;
    the Euler-Maclaurin tails dominate the cost at higher precision.
    """
    _check_constant(constant)
    if N_outer < 1 or (K_inner is not None and K_inner < 1):
        raise ValueError("truncation bounds must be >= 1")
    total = mpf(0)
    with mp.workprec(prec):
        for n in range(N_outer):
            K = K_inner if K_inner is not None else default_inner_cutoff(n)
            if constant == "zeta2":
                row = to_mpf(sum(_zeta2_row_term(n, k) for k in range(K + 1)))
                if tail_correction:
                    row += _row_tail(n, K + 1, prec)
                if sign_mode == "signed" and n % 2:
                    row = -row
            else:
                row = to_mpf(sum(_zeta3_row_term(n, k) for k in range(K + 1))) / 2
            total += row
        return +total


# ------------------------------------------------------------ quadrature


def _zeta2_signed_integrand(x, y):
    return 1 / (1 + x * x * y * y - x * y * y - x * x * y)


def _zeta2_absolute_integrand(x, y):
    return 1 / (1 - x * x * y * y - 2 * x * y + x * y * y + x * x * y)


def _zeta3_integrand(x, y, w):
    # 1 - L w + P w^2 with L = 1 - x^2 y - x y^2 + x^2 y^2, P = xy - x^2 y - x y^2 + x^2 y^2
    xy = x * y
    L = 1 - xy * (x + y) + xy * xy
    P = xy - xy * (x + y) + xy * xy
    return 0.5 / (1 - L * w + P * w * w)


# each integrand blows up at one corner of the cube; the rules grade toward it
INTEGRALS = {
    "zeta2_signed": (_zeta2_signed_integrand, QuadratureSpec(2, 20, 20, (1, 1))),
    "zeta2_absolute": (_zeta2_absolute_integrand, QuadratureSpec(2, 20, 20, (1, 1))),
    "zeta3": (_zeta3_integrand, QuadratureSpec(3, 8, 18, (0, 0, 1))),
}


def integral_crosscheck(which: str, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """Quadrature of the closed rational integrand for one of the three error sums."""
    if which not in INTEGRALS:
        raise ValueError(f"which must be one of {tuple(INTEGRALS)}")
    f, default = INTEGRALS[which]
    return integrate(f, spec or default)
