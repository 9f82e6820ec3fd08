"""Error sums attached to the exponential function.

Three independent routes to sum |q_n e^{1/l} - p_n| over the convergents of
e^{1/l}: summing the terms of the regular expansion, the error-function
closed form, and a Gauss-type continued fraction for 1F1(1, 3/2; z^2).  The
minor-convergent sum for e itself is handled twice, directly and through a
weighted sum over ordinary convergents, and Cohn's integral representation
of q_n e - p_n is reproduced exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import mpmath
from mpmath import mp, mpf

from .cf_engine import (
    ErrorSumReport,
    ErrorSumSpec,
    GcfSpec,
    PrecisionExhausted,
    accumulate,
    accumulate_stream,
    convergents,
    eval_gcf,
    minor_convergents,
    parse_tolerance,
    regular_cf_expand,
    tol_bits,
)
from .numkernel import PolyQ, as_fraction
from .oracles import const, fn_eval, to_mpf

__all__ = [
    "ExactExpIntegral",
    "gauss_cf_spec",
    "hyp1f1_cf_spec",
    "hyp1f1_one_half",
    "exp_root_cf",
    "errsum_exp",
    "minor_convergent_sum_e",
    "cohn_residual",
    "exp_poly_integral",
]

EXP_METHODS = ("cf_sum", "erf_form", "gauss_cf")


def _check_l(l: int) -> None:
    if not isinstance(l, int) or l < 2:
        raise ValueError(f"l must be an integer >= 2, got {l!r}")


# ------------------------------------------------------------ Gauss CFs


def gauss_cf_spec(l: int) -> GcfSpec:
    """1/l over 1/2 - (1/2l)/(3/2 + (2/2l)/(5/2 - ...)).

    Depth 1 gives the leading quotient 2/l.
    """
    _check_l(l)

    def term(n: int):
        if n == 1:
            return Fraction(1, l), Fraction(1, 2)
        m = n - 1
        return Fraction((-1) ** m * m, 2 * l), Fraction(2 * m + 1, 2)

    return GcfSpec(Fraction(0), term, f"gauss_cf(l={l})")


def hyp1f1_cf_spec(z2) -> GcfSpec:
    """Continued fraction for 1F1(1, 3/2; z2) with rational ``z2``."""
    z2 = as_fraction(z2)

    def term(n: int):
        if n == 1:
            return Fraction(1, 2), Fraction(1, 2)
        m = n - 1
        return (-1) ** m * m * z2 / 2, Fraction(2 * m + 1, 2)

    return GcfSpec(Fraction(0), term, f"1F1(1,3/2;{z2})")


def _cf_until_stable(spec: GcfSpec, tol: mpf, max_depth: int = 4000) -> tuple[Fraction, int, Fraction]:
    """Evaluate at even depths until consecutive values differ by < tol/4."""
    prev = eval_gcf(spec, 2)
    depth = 2
    while depth < max_depth:
        depth += 2
        cur = eval_gcf(spec, depth)
        diff = abs(cur - prev)
        if to_mpf(diff) < tol / 4:
            return cur, depth, diff
        prev = cur
    raise ArithmeticError(f"{spec.name} did not settle by depth {max_depth}")


def hyp1f1_one_half(z2, prec: int = 256, method: str = "series") -> mpf:
    """1F1(1, 3/2; z2), by the power series or by the Gauss continued fraction."""
    z2 = as_fraction(z2)
    if z2 < 0:
        raise ValueError("z2 must be nonnegative")
    if method == "series":
        with mp.workprec(prec + 16):
            x = to_mpf(z2)
            term = mpf(1)
            total = mpf(1)
            k = 0
            eps = mpf(2) ** (-prec - 8)
            while term > eps * total:
                term = term * x / (k + mpf(3) / 2)
                total += term
                k += 1
        with mp.workprec(prec):
            return +total
    if method == "cf":
        with mp.workprec(prec + 16):
            value, _, _ = _cf_until_stable(hyp1f1_cf_spec(z2), mpf(2) ** (-prec - 4))
            out = to_mpf(value)
        with mp.workprec(prec):
            return +out
    raise ValueError("method must be 'series' or 'cf'")


# ------------------------------------------------------------ regular CF


def _exp_root(l: int, prec: int) -> mpf:
    with mp.workprec(prec + 16):
        value = mpmath.exp(mpf(1) / l)
    with mp.workprec(prec):
        return +value


def exp_root_cf(l: int, count: int, prec: int | None = None) -> list[int]:
    """First ``count`` partial quotients of e^{1/l} (l = 1 gives e).

    The expansion comes from a high-precision value; if the requested count
    exhausts the precision the working precision is doubled and retried.
    """
    prec = prec or max(128, 8 * count + 64)
    while True:
        with mp.workprec(prec):
            x = _exp_root(l, prec) if l > 1 else const("e", prec)
            try:
                return regular_cf_expand(x, count, prec)
            except PrecisionExhausted:
                prec *= 2


def _expansion_for_tol(alpha_fn, tol: mpf, extra: int = 0) -> tuple[list[int], int]:
    """Quotients whose last convergent error is below ``tol``, plus ``extra`` more."""
    bits = 2 * tol_bits(tol) + 128
    with mp.workprec(bits):
        x = alpha_fn(bits)
        try:
            quotients = regular_cf_expand(x, 100_000, bits)
        except PrecisionExhausted as exc:
            quotients = exc.quotients
    # keep convergents with q_n^2 comfortably inside the precision
    keep = len(quotients)
    limit = 2 ** ((bits - 32) // 2)
    for c in convergents(quotients):
        if c.q > limit:
            keep = c.index
            break
    if keep < extra + 3:
        raise PrecisionExhausted("too few reliable partial quotients", quotients)
    return quotients[:keep], bits


# ------------------------------------------------------------ error sums


def errsum_exp(l: int, method: str = "cf_sum", prec: int = 256, tol="1e-45") -> ErrorSumReport:
    """Sum of |e^{1/l} q_n - p_n| over the convergents of e^{1/l}."""
    _check_l(l)
    tol = parse_tolerance(tol)
    if method == "cf_sum":
        alpha_fn = lambda bits: _exp_root(l, bits)
        quotients, bits = _expansion_for_tol(alpha_fn, tol)
        conv = list(convergents(quotients))
        spec = ErrorSumSpec(
            alpha_fn,
            lambda n: (conv[n].q, conv[n].p),
            "absolute",
            name="cf_sum",
        )
        report = accumulate(spec, tol, max_terms=len(conv), prec=prec)
        if not report.converged:
            raise PrecisionExhausted("expansion too short for the requested tolerance", quotients)
        return report
    if method == "erf_form":
        with mp.workprec(prec + 32):
            z = mpmath.sqrt(mpf(1) / l)
            value = _exp_root(l, prec + 32) * mpmath.sqrt(const("pi", prec + 32) / l) * fn_eval("erf", z, prec + 32)
        with mp.workprec(prec):
            return ErrorSumReport(+value, 0, mpf(0), "erf_form", True, prec)
    if method == "gauss_cf":
        value, depth, diff = _cf_until_stable(gauss_cf_spec(l), tol)
        with mp.workprec(prec):
            return ErrorSumReport(to_mpf(value), depth, to_mpf(diff), "gauss_cf", True, prec)
    raise ValueError(f"method must be one of {EXP_METHODS}")


def _minor_blocks(quotients: list[int], conv, e: mpf) -> Iterator[mpf]:
    # one value per partial quotient: the whole inner sum over b
    yield e - 2
    block, current = mpf(0), 1
    for mc in minor_convergents(quotients):
        if mc.index != current:
            yield block
            block, current = mpf(0), mc.index
        block += abs(mc.q * e - mc.p)
    yield block


def _triples(stream: Iterator[mpf]) -> Iterator[mpf]:
    # the quotients of e repeat with period three (1, 2k, 1); single blocks
    # jump up at every large quotient, sums over a full period decay steadily
    buf = []
    for v in stream:
        buf.append(v)
        if len(buf) == 3:
            yield mpmath.fsum(buf)
            buf = []
    if buf:
        yield mpmath.fsum(buf)


def _weighted_terms(quotients: list[int], conv, e: mpf) -> Iterator[mpf]:
    yield e - 1
    for nu in range(len(quotients) - 2):
        a1, a2 = quotients[nu + 1], quotients[nu + 2]
        delta = conv[nu].q * e - conv[nu].p
        weight = Fraction(a1 * (a1 + 1), 2) - a2
        yield (-1) ** (nu + 1) * delta * to_mpf(weight)


def minor_convergent_sum_e(prec: int = 256, tol="1e-40", method: str = "direct") -> ErrorSumReport:
    """Error sum of e over all minor convergents.

    ``direct`` sums |(b q_{n-1} + q_{n-2}) e - (b p_{n-1} + p_{n-2})| for
    1 <= b <= a_n; ``weighted`` uses the rearranged sum over ordinary
    convergents, which looks two quotients ahead.
    """
    tol = parse_tolerance(tol)
    quotients, bits = _expansion_for_tol(lambda b: const("e", b), tol, extra=2)
    conv = list(convergents(quotients))
    wp = max(prec, bits)
    with mp.workprec(wp):
        e = const("e", wp)
        if method == "direct":
            stream = _minor_blocks(quotients, conv, e)
        elif method == "weighted":
            stream = _weighted_terms(quotients, conv, e)
        else:
            raise ValueError("method must be 'direct' or 'weighted'")
        report = accumulate_stream(_triples(stream), tol, method=f"minor_{method}", prec=wp)
    if not report.converged:
        raise PrecisionExhausted("expansion too short for the requested tolerance", quotients)
    return report


# ------------------------------------------------------------ Cohn


@dataclass(frozen=True)
class ExactExpIntegral:
    """The number ``alpha * e + beta``."""

    alpha: Fraction
    beta: Fraction

    def value(self, prec: int = 256) -> mpf:
        with mp.workprec(prec + 16):
            v = to_mpf(self.alpha) * const("e", prec + 16) + to_mpf(self.beta)
        with mp.workprec(prec):
            return +v


def exp_poly_integral(poly: PolyQ) -> ExactExpIntegral:
    """Integral of poly(x) e^x over [0, 1] as alpha e + beta.

    Repeated integration by parts: the antiderivative is e^x S(x) with
    S = P - P' + P'' - ...
    """
    s = PolyQ()
    d = poly
    sign = 1
    while d.degree >= 0:
        s = s + d * sign
        d = d.derivative()
        sign = -sign
    return ExactExpIntegral(s(Fraction(1)), -s(Fraction(0)))


COHN_BRANCHES = ("3m-1", "3m", "3m+1")


def cohn_residual(m: int, branch: str) -> ExactExpIntegral:
    """q_k e - p_k for k = 3m-1, 3m or 3m+1 from its integral representation.

    The result is checked against the convergents of e before returning.
    """
    if branch not in COHN_BRANCHES:
        raise ValueError(f"branch must be one of {COHN_BRANCHES}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = PolyQ([0, 1])
    xm1 = PolyQ([-1, 1])
    if branch == "3m-1":
        index = 3 * m - 1
        integrand = -(x ** (m + 1) * xm1**m) * Fraction(1, math.factorial(m))
    elif branch == "3m":
        index = 3 * m
        integrand = -(x**m * xm1 ** (m + 1)) * Fraction(1, math.factorial(m))
    else:
        index = 3 * m + 1
        integrand = x ** (m + 1) * xm1 ** (m + 1) * Fraction(1, math.factorial(m + 1))
    result = exp_poly_integral(integrand)
    if index == -1:
        p, q = 1, 0
    else:
        conv = list(convergents(_e_quotients(index + 1)))[index]
        p, q = conv.p, conv.q
    if (result.alpha, result.beta) != (q, -p):
        raise ArithmeticError(
            f"integral gives {result.alpha} e + {result.beta}, convergent {index} is {p}/{q}"
        )
    return result


def _e_quotients(count: int) -> list[int]:
    return exp_root_cf(1, count)
