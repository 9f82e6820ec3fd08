"""Error sums for log(1+t), -1 < t <= 1.

B_n = sum C(n,k) C(n+k,k) t^(n-k) and A_n = same with an extra factor c_k,
the k-th partial sum of the log series.  Both satisfy a three-term
recurrence, A_n/B_n are the convergents of a continued fraction for
log(1+t), and B_n log(1+t) - A_n equals t^(2n+1) times a beta-type
integral.  Summing that integral over n gives an arctan closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import mpmath
from mpmath import mp, mpf

from .cf_engine import ErrorSumReport, ErrorSumSpec, GcfSpec, accumulate
from .numkernel import CheckReport, as_fraction, binomial, lcm_upto
from .oracles import QuadratureSpec, const, fn_eval, integrate, to_mpf

__all__ = [
    "HypothesisViolated",
    "Log1pSeqPair",
    "check_t",
    "log1p_seq",
    "log1p_cf_spec",
    "log1p_cf_scaled_spec",
    "perron_cf_spec",
    "verify_recurrence",
    "log1p_residual",
    "lemma_integral_check",
    "errsum_log1p",
    "log1p_closed_form",
    "ode_check",
    "irrationality_audit",
    "growth_limit",
]


class HypothesisViolated(ValueError):
    """The audit's size condition e a^2 < 4b does not hold."""


def check_t(t) -> Fraction:
    t = as_fraction(t)
    if not -1 < t <= 1:
        raise ValueError(f"t must satisfy -1 < t <= 1, got {t}")
    return t


@dataclass(frozen=True)
class Log1pSeqPair:
    n: int
    A: Fraction
    B: Fraction
    c_partial: tuple[Fraction, ...]


def _log_partials(t: Fraction, k: int) -> list[Fraction]:
    out = [Fraction(0)]
    power = Fraction(1)
    for m in range(1, k + 1):
        power *= t
        out.append(out[-1] + (-1) ** (m - 1) * power / m)
    return out


@lru_cache(maxsize=4096)
def _seq(t: Fraction, n: int) -> Log1pSeqPair:
    c = _log_partials(t, n)
    a = b = Fraction(0)
    for k in range(n + 1):
        lam = binomial(n, k) * binomial(n + k, k) * t ** (n - k)
        b += lam
        a += lam * c[k]
    return Log1pSeqPair(n, a, b, tuple(c))


def log1p_seq(t, n: int) -> Log1pSeqPair:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _seq(check_t(t), n)


def log1p_cf_spec(t) -> GcfSpec:
    """Continued fraction read straight off the recurrence.

    a_1 = 2t, b_1 = 2+t, a_{n+1} = -n t^2/(n+1), b_{n+1} = (2n+1)(2+t)/(n+1).
    Its forward numerators and denominators are A_n and B_n themselves.
    """
    t = check_t(t)

    def term(j: int):
        if j == 1:
            return 2 * t, 2 + t
        n = j - 1
        return -n * t * t / (n + 1), (2 * n + 1) * (2 + t) / (n + 1)

    return GcfSpec(Fraction(0), term, f"log1p_cf(t={t})")


def log1p_cf_scaled_spec(t) -> GcfSpec:
    """The same fraction after clearing denominators: -m^2 t^2 over (2m+1)(2+t)."""
    t = check_t(t)

    def term(j: int):
        if j == 1:
            return 2 * t, 2 + t
        m = j - 1
        return -m * m * t * t, (2 * m + 1) * (2 + t)

    return GcfSpec(Fraction(0), term, f"log1p_cf_scaled(t={t})")


def perron_cf_spec(t) -> GcfSpec:
    """t/(1 + 1t/(2 + 1t/(3 + 4t/(4 + 4t/(5 + 9t/(6 + ...))))))."""
    t = check_t(t)

    def term(j: int):
        if j == 1:
            return t, Fraction(1)
        return (j // 2) ** 2 * t, Fraction(j)

    return GcfSpec(Fraction(0), term, f"perron(t={t})")


def verify_recurrence(t, n_max: int) -> CheckReport:
    """(n+1)X_{n+1} - (2n+1)(2+t)X_n + n t^2 X_{n-1} = 0 for X = A, B.

    Also checks sum (-1)^k C(n,k) C(n+k,k)/(k+1) = 0 for 1 <= n <= n_max,
    the cancellation that lets A inherit the recurrence from B.
    """
    t = check_t(t)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    report = CheckReport(f"log1p_recurrence(t={t})", 0, proven=True)
    seq = [log1p_seq(t, n) for n in range(n_max + 1)]
    for n in range(1, n_max):
        for name in ("A", "B"):
            x = [getattr(seq[n + d], name) for d in (-1, 0, 1)]
            lhs = (n + 1) * x[2] - (2 * n + 1) * (2 + t) * x[1] + n * t * t * x[0]
            if lhs != 0:
                report.first_failure = (name, n, lhs)
                return report
        report.checked += 1
    for n in range(1, n_max + 1):
        s = sum(Fraction((-1) ** k * binomial(n, k) * binomial(n + k, k), k + 1) for k in range(n + 1))
        if s != 0:
            report.first_failure = ("vandermonde", n, s)
            return report
    return report


def _bits(x: Fraction) -> int:
    return max(abs(x.numerator).bit_length() - x.denominator.bit_length(), 0) + 8


def _log1p(t: Fraction, prec: int) -> mpf:
    return fn_eval("log1p", t, prec)


def log1p_residual(t, n: int, prec: int = 256) -> mpf:
    """B_n log(1+t) - A_n."""
    pair = log1p_seq(t, n)
    wp = prec + _bits(pair.A) + _bits(pair.B)
    with mp.workprec(wp):
        v = to_mpf(pair.B) * _log1p(as_fraction(t), wp) - to_mpf(pair.A)
    with mp.workprec(prec):
        return +v


class IntegralCheck(NamedTuple):
    exact: mpf
    quadrature: mpf
    error: float

    @property
    def agrees(self) -> bool:
        return abs(float(self.exact) - float(self.quadrature)) <= self.error


def lemma_integral_check(t, n: int, prec: int = 256, spec: QuadratureSpec | None = None) -> IntegralCheck:
    """Compare B_n log(1+t) - A_n with t^(2n+1) * int x^n (1-x)^n/(1+tx)^(n+1)."""
    t = check_t(t)
    exact = log1p_residual(t, n, prec)
    tf = float(t)
    # near t = -1 the integrand piles up against x = 1
    spec = spec or QuadratureSpec(1, 20, 12, (1,))

    def f(x):
        return (x * (1 - x) / (1 + tf * x)) ** n / (1 + tf * x)

    r = integrate(f, spec)
    scale = abs(tf) ** (2 * n + 1)
    sign = 1 if t > 0 else -1
    with mp.workprec(prec):
        q = sign * r.value * mpf(scale)
    return IntegralCheck(exact, q, r.error * scale)


def _log1p_term(t: Fraction):
    def term(n: int):
        pair = log1p_seq(t, n)
        return pair.B, pair.A

    return term


def log1p_closed_form(t, prec: int = 256) -> mpf:
    """(2/s)(arctan((1+t)/s) - arctan((1-t)/s)) with s = sqrt(3 + 2t - t^2)."""
    t = check_t(t)
    wp = prec + 16
    with mp.workprec(wp):
        if t == 0:
            return mpf(0)
        tq = to_mpf(t)
        s = fn_eval("sqrt", 3 + 2 * t - t * t, wp)
        v = 2 / s * (fn_eval("arctan", (1 + tq) / s, wp) - fn_eval("arctan", (1 - tq) / s, wp))
    with mp.workprec(prec):
        return +v


def errsum_log1p(
    t, method: str = "series", prec: int = 256, tol="1e-40", sign_mode: str = "signed"
) -> ErrorSumReport:
    """Sum over n of B_n log(1+t) - A_n.

    Every term has the sign of t, so the signed sum is sign(t) times the
    absolute one.
    """
    t = check_t(t)
    if method == "series":
        target = lambda p: _log1p(t, p)
        spec = ErrorSumSpec(target, _log1p_term(t), sign_mode, name=f"log1p_{sign_mode}")
        return accumulate(spec, tol, prec=prec)
    if method == "closed_form":
        v = log1p_closed_form(t, prec)
        if sign_mode == "absolute":
            v = abs(v)
        return ErrorSumReport(v, 0, mpf(0), "closed_form", True, prec)
    raise ValueError("method must be 'series' or 'closed_form'")


class OdeReport(NamedTuple):
    max_residual: mpf
    residuals: tuple


def ode_check(samples: Sequence, h=Fraction(1, 2**20), prec: int = 128) -> OdeReport:
    """Residual of (3 + 2t - t^2) f' + (1-t) f - 3 with f' by central difference."""
    h = as_fraction(h)
    if h <= 0:
        raise ValueError("h must be positive")
    out = []
    for t in samples:
        t = check_t(t)
        check_t(t - h)
        check_t(t + h)
        with mp.workprec(prec):
            f0 = log1p_closed_form(t, prec)
            d = (log1p_closed_form(t + h, prec) - log1p_closed_form(t - h, prec)) / (2 * to_mpf(h))
            tq = to_mpf(t)
            out.append(abs((3 + 2 * tq - tq * tq) * d + (1 - tq) * f0 - 3))
    return OdeReport(max(out), tuple(out))


@dataclass(frozen=True)
class AuditRow:
    n: int
    scaled_B: int
    scaled_A: int
    magnitude: mpf


@dataclass
class AuditReport:
    a: int
    b: int
    rows: list[AuditRow]
    all_positive: bool
    all_integral: bool
    decreasing_from: int | None
    block_maxima: tuple

    @property
    def blocks_decreasing(self) -> bool:
        m = self.block_maxima
        return all(m[i + 1] < m[i] for i in range(len(m) - 1))

    @property
    def final(self) -> mpf:
        return self.rows[-1].magnitude


def irrationality_audit(a: int, b: int, n_max: int = 30, prec: int = 256, block: int = 10) -> AuditReport:
    """Tabulate |b^n d_n B_n log(1+a/b) - b^n d_n A_n| for n = 1..n_max.

    The pairs are checked to be integers and the linear form to be nonzero.
    ``decreasing_from`` is the first n after which the magnitudes decrease
    strictly to the end of the table (None if the last step goes up).  Single
    steps go up whenever d_n jumps at a prime power, so the decay is also
    summarised by the maxima over consecutive blocks of ``block`` rows.  The
    table is evidence over a finite range, not a proof.
    """
    if not (isinstance(a, int) and isinstance(b, int)) or a <= 0 or b <= 0:
        raise ValueError("need positive integers a, b")
    with mp.workprec(64):
        if not const("e", 64) * a * a < 4 * b:
            raise HypothesisViolated(f"e*a^2 < 4b fails for a={a}, b={b}")
    if a > b:
        raise ValueError("need a/b <= 1")
    t = Fraction(a, b)
    rows = []
    integral = True
    for n in range(1, n_max + 1):
        pair = log1p_seq(t, n)
        scale = b**n * lcm_upto(n)
        sb, sa = pair.B * scale, pair.A * scale
        integral &= sb.denominator == 1 and sa.denominator == 1
        with mp.workprec(prec):
            mag = abs(log1p_residual(t, n, prec) * scale)
        rows.append(AuditRow(n, int(sb), int(sa) if sa.denominator == 1 else sa, mag))
    positive = all(r.magnitude > 0 for r in rows)
    start = None
    for i in range(len(rows) - 1, 0, -1):
        if rows[i].magnitude < rows[i - 1].magnitude:
            start = rows[i - 1].n
        else:
            break
    maxima = tuple(max(r.magnitude for r in rows[i : i + block]) for i in range(0, len(rows), block))
    return AuditReport(a, b, rows, positive, integral, start, maxima)


def growth_limit(t, prec: int = 64) -> mpf:
    """Limit of B_{n+1}/B_n: 2 + t + 2 sqrt(1+t)."""
    t = check_t(t)
    with mp.workprec(prec):
        return 2 + to_mpf(t) + 2 * mpmath.sqrt(1 + to_mpf(t))
