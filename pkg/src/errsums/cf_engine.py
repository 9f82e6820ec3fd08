"""Continued fractions and error-sum accumulation.

Generalized continued fractions are described by a :class:`GcfSpec`, a head
``b0`` plus a term function ``n -> (a_n, b_n)`` for n >= 1, read as

    b0 + a1 / (b1 + a2 / (b2 + ...)).

Regular expansions of reals are exact: the input is turned into a rational
interval and Euclid's algorithm runs on both ends until they disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import mpmath
from mpmath import mp, mpf

from .numkernel import as_fraction
from .oracles import to_mpf

__all__ = [
    "CFError",
    "PrecisionExhausted",
    "DivergenceError",
    "GcfSpec",
    "Convergent",
    "MinorConvergent",
    "ErrorSumSpec",
    "ErrorSumReport",
    "eval_gcf",
    "gcf_numden",
    "gcf_convergents",
    "regular_cf_expand",
    "cf_value",
    "convergents",
    "minor_convergents",
    "accumulate",
    "accumulate_stream",
    "parse_tolerance",
    "tol_bits",
]


class CFError(ArithmeticError):
    """A zero denominator turned up while evaluating a continued fraction."""


class PrecisionExhausted(ArithmeticError):
    """The input interval no longer determines the next partial quotient."""

    def __init__(self, message: str, quotients: list[int]):
        super().__init__(message)
        self.quotients = quotients


class DivergenceError(ArithmeticError):
    """Error-sum terms stopped shrinking."""


# ------------------------------------------------------------------ GCFs


@dataclass(frozen=True)
class GcfSpec:
    b0: Fraction
    term: Callable[[int], tuple[Fraction, Fraction]]
    name: str = ""

    def terms(self, depth: int) -> list[tuple[Fraction, Fraction]]:
        out = []
        for n in range(1, depth + 1):
            a, b = self.term(n)
            out.append((as_fraction(a), as_fraction(b)))
        return out


def eval_gcf(spec: GcfSpec, depth: int) -> Fraction:
    """Exact value of the fraction truncated after ``a_depth / b_depth``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    b0 = as_fraction(spec.b0)
    if depth == 0:
        return b0
    terms = spec.terms(depth)
    tail = terms[-1][1]
    for n in range(depth - 1, 0, -1):
        if tail == 0:
            raise CFError(f"zero denominator at level {n + 1} of {spec.name or 'gcf'}")
        tail = terms[n - 1][1] + terms[n][0] / tail
    if tail == 0:
        raise CFError(f"zero denominator at level 1 of {spec.name or 'gcf'}")
    return b0 + terms[0][0] / tail


def gcf_numden(spec: GcfSpec, depth: int) -> list[tuple[Fraction, Fraction]]:
    """Forward recurrence numerators and denominators ``(P_n, Q_n)``, n = 0..depth.

    P_n = b_n P_{n-1} + a_n P_{n-2} with P_{-1} = 1, P_0 = b0, Q_{-1} = 0, Q_0 = 1.
    """
    p_prev, p = Fraction(1), as_fraction(spec.b0)
    q_prev, q = Fraction(0), Fraction(1)
    out = [(p, q)]
    for a, b in spec.terms(depth):
        p_prev, p = p, b * p + a * p_prev
        q_prev, q = q, b * q + a * q_prev
        out.append((p, q))
    return out


def gcf_convergents(spec: GcfSpec, depth: int) -> Iterator[Fraction]:
    """Yield ``P_n / Q_n`` for n = 1..depth."""
    for n, (p, q) in enumerate(gcf_numden(spec, depth)):
        if n == 0:
            continue
        if q == 0:
            raise CFError(f"vanishing denominator at n={n}")
        yield p / q


# ------------------------------------------------------------ regular CFs


class Convergent(NamedTuple):
    p: int
    q: int
    index: int


class MinorConvergent(NamedTuple):
    index: int
    b: int
    p: int
    q: int


def _mpf_interval(x: mpf, prec: int) -> tuple[Fraction, Fraction]:
    man, exp = (int(v) for v in mpmath.mpf(x).man_exp)
    if man == 0:
        ulp = Fraction(1, 2**prec)
        return -ulp, ulp
    top = exp + int(abs(man)).bit_length()
    centre = Fraction(man) * (Fraction(2) ** exp)
    ulp = Fraction(2) ** (top - prec)
    return centre - ulp, centre + ulp


def regular_cf_expand(x, max_terms: int | None = None, prec: int | None = None) -> list[int]:
    """Partial quotients ``[a_0; a_1, ...]`` of ``x``.

    Rationals expand exactly and terminate.  An mpf is widened to
    ``[x - ulp, x + ulp]`` at ``prec`` bits (default: the current context)
    and a quotient is only emitted when both ends have the same floor.  If
    that fails before ``max_terms`` quotients, :class:`PrecisionExhausted`
    carries the quotients found so far.
    """
    if isinstance(x, (int, Fraction)):
        r = Fraction(x)
        out = []
        while max_terms is None or len(out) < max_terms:
            a = math.floor(r)
            out.append(a)
            r -= a
            if r == 0:
                break
            r = 1 / r
        return out
    if max_terms is None:
        raise ValueError("max_terms is required for inexact input")
    lo, hi = _mpf_interval(x, prec or mp.prec)
    out = []
    while len(out) < max_terms:
        a, b = math.floor(lo), math.floor(hi)
        if a != b or lo == a:
            raise PrecisionExhausted(
                f"ambiguous partial quotient after {len(out)} terms; raise the precision",
                out,
            )
        out.append(a)
        lo, hi = 1 / (hi - a), 1 / (lo - a)
    return out


def cf_value(quotients: Sequence[int]) -> Fraction:
    """Exact value of a finite regular continued fraction."""
    v = Fraction(quotients[-1])
    for a in reversed(quotients[:-1]):
        v = a + 1 / v
    return v


def convergents(quotients: Iterable[int]) -> Iterator[Convergent]:
    """``p_n/q_n`` with p_{-1}=1, q_{-1}=0, p_{-2}=0, q_{-2}=1."""
    p2, p1 = 0, 1
    q2, q1 = 1, 0
    for n, a in enumerate(quotients):
        p2, p1 = p1, a * p1 + p2
        q2, q1 = q1, a * q1 + q2
        yield Convergent(p1, q1, n)


def minor_convergents(quotients: Sequence[int]) -> Iterator[MinorConvergent]:
    """All intermediate fractions for n >= 1, with ``b = a_n`` the convergent itself."""
    p2, p1 = 0, 1
    q2, q1 = 1, 0
    for n, a in enumerate(quotients):
        if n >= 1:
            if a < 1:
                raise ValueError(f"partial quotient a_{n} = {a} must be positive")
            for b in range(1, a + 1):
                yield MinorConvergent(n, b, b * p1 + p2, b * q1 + q2)
        p2, p1 = p1, a * p1 + p2
        q2, q1 = q1, a * q1 + q2


# ------------------------------------------------------------ error sums

SIGN_MODES = ("signed", "absolute")


@dataclass(frozen=True)
class ErrorSumSpec:
    """Terms ``b_n * target - r_n`` for n = start, start+1, ...

    ``target`` maps a precision in bits to the value of the approximated
    number, so the accumulator can ask for more bits as ``b_n`` grows.
    """

    target: Callable[[int], mpf]
    term: Callable[[int], tuple[Fraction, Fraction]]
    sign_mode: str = "signed"
    start: int = 0
    name: str = ""

    def __post_init__(self):
        if self.sign_mode not in SIGN_MODES:
            raise ValueError(f"sign_mode must be one of {SIGN_MODES}")


@dataclass(frozen=True)
class ErrorSumReport:
    value: mpf
    terms_used: int
    tail_bound: mpf
    method: str
    converged: bool = True
    prec: int = 0
    extras: dict = field(default_factory=dict, compare=False)

    def digits(self, n: int = 20) -> str:
        return mpmath.nstr(self.value, n, strip_zeros=False)


def parse_tolerance(tol) -> mpf:
    """Tolerances arrive as decimal strings, Fractions, ints or mpf."""
    with mp.workprec(64):
        if isinstance(tol, str):
            value = mpf(tol.strip())
        elif isinstance(tol, float):
            value = mpf(repr(tol))
        else:
            value = to_mpf(tol)
    if not value > 0:
        raise ValueError("tolerance must be positive")
    return value


def tol_bits(tol: mpf) -> int:
    return max(1, int(-mpmath.floor(mpmath.log(tol, 2))))


def _frac_bits(x: Fraction) -> int:
    x = abs(x)
    if x == 0:
        return 0
    return max(0, x.numerator.bit_length() - x.denominator.bit_length() + 1)


class _TailRule:
    """Geometric tail estimate from the last three magnitudes.

    Isolated exact zeros (a vanishing weight, say) carry no decay
    information and are skipped; three zeros in a row end the sum.
    """

    def __init__(self, patience: int = 16):
        self.window: list[mpf] = []
        self.zero_run = 0
        self.growth = 0
        self.patience = patience

    def push(self, magnitude: mpf) -> mpf | None:
        if magnitude == 0:
            self.zero_run += 1
            return mpf(0) if self.zero_run >= 3 else None
        self.zero_run = 0
        self.window = (self.window + [magnitude])[-3:]
        if len(self.window) < 3:
            return None
        w = self.window
        r_hat = max(w[1] / w[0], w[2] / w[1])
        if r_hat >= 1:
            self.growth += 1
            if self.growth >= self.patience:
                raise DivergenceError(f"term ratio >= 1 for {self.growth} consecutive steps")
            return None
        self.growth = 0
        return w[-1] * r_hat / (1 - r_hat)


def accumulate_stream(
    values: Iterable[mpf],
    tol,
    max_terms: int = 100_000,
    method: str = "stream",
    prec: int | None = None,
    min_terms: int = 3,
    finite: bool = False,
) -> ErrorSumReport:
    """Sum a stream of already-evaluated terms with the geometric tail rule.

    The sum stops once the tail estimate drops below ``tol``.  Running out of
    terms counts as converged only for a ``finite`` stream; otherwise the
    report is flagged as an estimate.
    """
    tol = parse_tolerance(tol)
    wp = max(prec or 0, tol_bits(tol) + 32)
    rule = _TailRule()
    total = mpf(0)
    used = 0
    tail: mpf | None = None
    with mp.workprec(wp):
        it = iter(values)
        while used < max_terms:
            try:
                v = next(it)
            except StopIteration:
                if finite:
                    return ErrorSumReport(+total, used, mpf(0), method, True, wp)
                bound = tail if tail is not None else mpf("inf")
                return ErrorSumReport(+total, used, bound, method, False, wp)
            total += v
            used += 1
            tail = rule.push(abs(v))
            if tail is not None and used >= min_terms and tail < tol:
                return ErrorSumReport(+total, used, +tail, method, True, wp)
        bound = tail if tail is not None else mpf("inf")
        return ErrorSumReport(+total, used, bound, method, False, wp)


def accumulate(
    spec: ErrorSumSpec,
    tol,
    max_terms: int = 100_000,
    prec: int | None = None,
    method: str | None = None,
) -> ErrorSumReport:
    """Sum ``eps_n (b_n * target - r_n)``; ``eps_n`` is 1 or the sign of the term.

    The target is re-evaluated with enough bits to cover the cancellation
    in ``b_n * target - r_n`` as ``b_n`` grows.
    """
    tol = parse_tolerance(tol)
    wp = max(prec or 0, tol_bits(tol) + 32)
    cache: dict[int, mpf] = {}

    def target_at(bits: int) -> mpf:
        bits = 64 * math.ceil(bits / 64)
        if bits not in cache:
            cache.clear()
            cache[bits] = spec.target(bits)
        return cache[bits]

    def terms() -> Iterator[mpf]:
        n = spec.start
        while True:
            b, r = spec.term(n)
            b, r = as_fraction(b), as_fraction(r)
            bits = wp + max(_frac_bits(b), _frac_bits(r)) + 16
            alpha = target_at(bits)
            with mp.workprec(bits):
                v = to_mpf(b) * alpha - to_mpf(r)
            if spec.sign_mode == "absolute":
                v = abs(v)
            with mp.workprec(wp):
                v = +v
            yield v
            n += 1

    return accumulate_stream(terms(), tol, max_terms, method or spec.name or "accumulate", wp)
