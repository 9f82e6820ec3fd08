"""Reference constants, elementary functions and cube quadrature.

Nothing here touches the approximating sequences that the rest of the package
studies; these are the independent yardsticks.  High-precision reals are
``mpmath.mpf`` values and every function takes its precision in bits as an
argument, evaluated inside ``mp.workprec`` so callers never depend on the
ambient mpmath context.

Quadrature runs in numpy float64.  That is deliberate: the integrals are only
ever compared at the 1e-5 .. 1e-10 level and vectorised tensor-product Gauss
rules are orders of magnitude faster than their mpf counterparts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
import numpy as np
from mpmath import mp, mpf

__all__ = [
    "CONSTANTS",
    "FUNCTIONS",
    "OracleError",
    "QuadratureError",
    "QuadratureSpec",
    "QuadratureResult",
    "to_mpf",
    "const",
    "fn_eval",
    "zeta_euler_maclaurin",
    "integrate",
    "gauss_legendre_rule",
]

GUARD_BITS = 16


class OracleError(ValueError):
    """Unknown name or argument outside the function's domain."""


class QuadratureError(ArithmeticError):
    """The integrand produced a non-finite sample."""


def to_mpf(x) -> mpf:
    """Convert int / Fraction / mpf / str to an mpf at the current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# ---------------------------------------------------------------- constants


def zeta_euler_maclaurin(s: int, prec: int) -> mpf:
    """Sum of n**-s by Euler-Maclaurin with an explicit Bernoulli tail.

    Head of N-1 terms, the integral and half-endpoint corrections, then M
    Bernoulli corrections.  With N = M ~ prec/6 the remainder is far below
    2**-prec for s = 2, 3.
    """
    if s < 2:
        raise OracleError("zeta needs s >= 2")
    with mp.workprec(prec + GUARD_BITS):
        n_head = prec // 6 + 10
        n_corr = n_head
        big_n = mpf(n_head)
        total = mpmath.fsum(mpf(k) ** -s for k in range(1, n_head))
        total += big_n ** (1 - s) / (s - 1) + big_n ** (-s) / 2
        rising = mpf(s)  # s (s+1) ... (s+2k-2)
        fact = mpf(2)  # (2k)!
        for k in range(1, n_corr + 1):
            b2k = mpmath.bernfrac(2 * k)
            term = mpf(b2k[0]) / b2k[1] / fact * rising * big_n ** (-s - 2 * k + 1)
            total += term
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            fact *= (2 * k + 1) * (2 * k + 2)
        return +total


def _golden(prec: int) -> mpf:
    return (1 + mpmath.sqrt(5)) / 2


CONSTANTS: dict[str, Callable[[int], mpf]] = {
    "pi": lambda prec: +mp.pi,
    "e": lambda prec: +mp.e,
    "log2": lambda prec: +mp.ln2,
    "zeta2": lambda prec: zeta_euler_maclaurin(2, prec),
    "zeta3": lambda prec: zeta_euler_maclaurin(3, prec),
    "golden_rho": _golden,
    "log_rho": lambda prec: mpmath.log(_golden(prec)),
}


@lru_cache(maxsize=64)
def _const_cached(name: str, prec: int) -> mpf:
    with mp.workprec(prec + GUARD_BITS):
        value = CONSTANTS[name](prec)
    with mp.workprec(prec):
        return +value


def const(name: str, prec: int = 256) -> mpf:
    """High-precision value of a named constant, rounded to ``prec`` bits."""
    if name not in CONSTANTS:
        raise OracleError(f"unknown constant {name!r}; known: {sorted(CONSTANTS)}")
    if prec < 32:
        raise OracleError("prec must be at least 32 bits")
    return _const_cached(name, int(prec))


# ---------------------------------------------------------------- functions


def _check_log1p(x):
    if x <= -1:
        raise OracleError("log1p needs x > -1")


def _check_acos(x):
    if abs(x) > 1:
        raise OracleError("arccos needs |x| <= 1")


def _check_sqrt(x):
    if x < 0:
        raise OracleError("sqrt needs x >= 0")


FUNCTIONS: dict[str, tuple[Callable, Callable | None]] = {
    "exp": (mpmath.exp, None),
    "log1p": (mpmath.log1p, _check_log1p),
    "erf": (mpmath.erf, None),
    "arctan": (mpmath.atan, None),
    "arccos": (mpmath.acos, _check_acos),
    "sqrt": (mpmath.sqrt, _check_sqrt),
}


def fn_eval(name: str, x, prec: int = 256) -> mpf:
    """Evaluate an elementary or error function at ``x`` to ``prec`` bits."""
    try:
        fn, check = FUNCTIONS[name]
    except KeyError:
        raise OracleError(f"unknown function {name!r}; known: {sorted(FUNCTIONS)}") from None
    with mp.workprec(prec + GUARD_BITS):
        arg = to_mpf(x)
        if check is not None:
            check(arg)
        value = fn(arg)
    with mp.workprec(prec):
        return +value


# ---------------------------------------------------------------- quadrature


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor Gauss-Legendre rule on [0, 1]^dimension.

    Each axis is split into ``depth + 1`` panels graded geometrically toward
    the coordinate named in ``corner`` (0 or 1; ``None`` means a single
    panel), with ``nodes`` Gauss points per panel.
    """

    dimension: int = 1
    nodes: int = 20
    depth: int = 12
    corner: tuple[int | None, ...] | None = None

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise ValueError("dimension must be 1, 2 or 3")
        if self.nodes < 2:
            raise ValueError("need at least 2 nodes per panel")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        corner = self.corner if self.corner is not None else (1,) * self.dimension
        if len(corner) != self.dimension or any(c not in (0, 1, None) for c in corner):
            raise ValueError("corner must give 0, 1 or None per axis")
        object.__setattr__(self, "corner", tuple(corner))

    def refined(self) -> "QuadratureSpec":
        return QuadratureSpec(self.dimension, self.nodes + max(2, self.nodes // 2), self.depth + 4, self.corner)


@dataclass(frozen=True)
class QuadratureResult:
    value: mpf
    error: float
    samples: int


@lru_cache(maxsize=None)
def gauss_legendre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


def _axis_rule(nodes: int, depth: int, toward, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    if toward is None:
        cuts = [0.0, 1.0]
    else:
        cuts = [0.0] + [1 - 2.0**-k for k in range(1, depth + 1)] + [1.0]
        if toward == 0:
            cuts = sorted(1 - c for c in cuts)
    x0, w0 = gauss_legendre_rule(nodes)
    xs, ws = [], []
    for a, b in zip(cuts[:-1], cuts[1:]):
        xs.append(a + (b - a) * x0)
        ws.append((b - a) * w0)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    return lo + (hi - lo) * x, (hi - lo) * w


def _tensor_sum(f: Callable, rules, chunk: int) -> tuple[float, int]:
    dim = len(rules)
    (x, wx) = rules[0]
    partial = []
    for start in range(0, len(x), chunk):
        xs, wxs = x[start : start + chunk], wx[start : start + chunk]
        if dim == 1:
            vals = f(xs)
            weights = wxs
        elif dim == 2:
            (y, wy) = rules[1]
            vals = f(xs[:, None], y[None, :])
            weights = wxs[:, None] * wy[None, :]
        else:
            (y, wy), (z, wz) = rules[1], rules[2]
            vals = f(xs[:, None, None], y[None, :, None], z[None, None, :])
            weights = wxs[:, None, None] * wy[None, :, None] * wz[None, None, :]
        vals = np.broadcast_to(np.asarray(vals, dtype=float), weights.shape)
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("integrand returned a non-finite value at an interior node")
        partial.append(float(np.sum(vals * weights)))
    samples = int(np.prod([len(r[0]) for r in rules]))
    return math.fsum(partial), samples


def _single_level(f, spec: QuadratureSpec, lo, hi, chunk) -> tuple[float, int]:
    rules = [_axis_rule(spec.nodes, spec.depth, c, lo, hi) for c in spec.corner]
    return _tensor_sum(f, rules, chunk)


def integrate(
    f: Callable,
    spec: QuadratureSpec | None = None,
    lower: float = 0.0,
    upper: float = 1.0,
    chunk: int = 64,
) -> QuadratureResult:
    """Integrate a numpy-vectorised ``f`` over the cube [lower, upper]^d.

    ``f`` receives one broadcastable array per coordinate.  The rule in
    ``spec`` and its refinement are both evaluated; the refined value is
    returned and the difference serves as the error estimate, floored at
    float64 roundoff.
    """
    spec = spec or QuadratureSpec()
    coarse, _ = _single_level(f, spec, lower, upper, chunk)
    fine, samples = _single_level(f, spec.refined(), lower, upper, chunk)
    error = abs(fine - coarse) + 64 * np.finfo(float).eps * max(1.0, abs(fine))
    return QuadratureResult(mpf(fine), float(error), samples)
