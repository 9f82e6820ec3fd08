"""Exact arithmetic primitives.

Rationals are :class:`fractions.Fraction`.  This module adds the combinatorial
helpers used throughout the package and three small dense containers with
rational coefficients: univariate polynomials (:class:`PolyQ`), bivariate
polynomials (:class:`BiPolyQ`) and truncated power series (:class:`SeriesQ`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "binomial",
    "pochhammer",
    "lcm_upto",
    "as_fraction",
    "PolyQ",
    "BiPolyQ",
    "SeriesQ",
    "series_add",
    "series_mul",
    "series_pow",
    "series_inv_sqrt",
    "series_sqrt",
    "CheckReport",
]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused; they would smuggle binary rounding into exact code.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with ``C(n, k) = 0`` for ``k < 0`` or ``k > n``."""
    if n < 0:
        raise ValueError(f"binomial: negative upper index {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+n-1)``; the empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer: n must be nonnegative")
    x = as_fraction(x)
    # accumulate numerator and denominator separately; far cheaper than
    # reducing a Fraction at every step
    num, den = 1, 1
    for j in range(n):
        num *= x.numerator + j * x.denominator
        den *= x.denominator
    return Fraction(num, den)


def lcm_upto(n: int) -> int:
    """``lcm(1, 2, ..., n)`` with ``lcm_upto(0) == 1``."""
    if n < 0:
        raise ValueError("lcm_upto: n must be nonnegative")
    return reduce(math.lcm, range(1, n + 1), 1)


STATUSES = ("proven", "empirical_pass", "empirical_fail")


@dataclass
class CheckReport:
    """Outcome of an exhaustive check of an identity over a finite range.

    ``status`` is ``proven`` when the identity has a proof and the range was
    only a sanity sweep; otherwise ``empirical_pass`` or ``empirical_fail``.
    """

    claim: str
    checked: int
    first_failure: object = None
    proven: bool = False
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def status(self) -> str:
        if not self.passed:
            return "empirical_fail"
        return "proven" if self.proven else "empirical_pass"

    def as_dict(self) -> dict:
        return {
            "claim_id": self.claim,
            "status": self.status,
            "range": self.checked,
            "first_failure": None if self.first_failure is None else str(self.first_failure),
        }


# --------------------------------------------------------------------------
# univariate polynomials
# --------------------------------------------------------------------------


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class PolyQ:
    """Dense polynomial with rational coefficients, lowest power first.

    Instances are immutable.  The zero polynomial has an empty coefficient
    tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: tuple[Fraction, ...] = tuple(
            _trim([as_fraction(c) for c in coeffs])
        )

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "PolyQ":
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def _coerce(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            return other
        return PolyQ([as_fraction(other)])

    def __add__(self, other) -> "PolyQ":
        other = self._coerce(other)
        n = max(len(self), len(other))
        return PolyQ([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other) -> "PolyQ":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyQ":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyQ":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return PolyQ()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyQ":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = PolyQ([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == PolyQ([as_fraction(other)]).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, t):
        acc = 0 * t
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "PolyQ":
        return PolyQ([k * c for k, c in enumerate(self.coeffs)][1:])

    def integrate01(self) -> Fraction:
        """Exact value of the integral over [0, 1]."""
        return sum((c / (k + 1) for k, c in enumerate(self.coeffs)), Fraction(0))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "PolyQ(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        return "PolyQ(" + " + ".join(terms) + ")"


# --------------------------------------------------------------------------
# bivariate polynomials
# --------------------------------------------------------------------------


class BiPolyQ:
    """Dense bivariate polynomial; ``coeffs[i, j]`` multiplies ``x**i * y**j``.

    Coefficients live in a numpy object array so that Python ints and
    Fractions keep exact arithmetic while shifts and sums stay vectorised.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=object)
        if arr.ndim != 2:
            raise ValueError("BiPolyQ needs a 2-D coefficient matrix")
        arr = self._crop(arr)
        arr.flags.writeable = False
        self.coeffs = arr

    @staticmethod
    def _crop(arr: np.ndarray) -> np.ndarray:
        nz = np.argwhere(arr != 0)
        if len(nz) == 0:
            return np.zeros((1, 1), dtype=object)
        i, j = nz.max(axis=0)
        return arr[: i + 1, : j + 1].copy()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, object]]) -> "BiPolyQ":
        terms = list(terms)
        n = max(t[0] for t in terms) + 1
        m = max(t[1] for t in terms) + 1
        arr = np.zeros((n, m), dtype=object)
        for i, j, c in terms:
            arr[i, j] += c
        return cls(arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        n, m = self.coeffs.shape
        if 0 <= i < n and 0 <= j < m:
            return self.coeffs[i, j]
        return 0

    def terms(self):
        """Yield ``(i, j, c)`` for every nonzero coefficient."""
        for i, j in np.argwhere(self.coeffs != 0):
            yield int(i), int(j), self.coeffs[i, j]

    def _padded(self, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=object)
        n, m = self.coeffs.shape
        out[:n, :m] = self.coeffs
        return out

    def __add__(self, other: "BiPolyQ") -> "BiPolyQ":
        shape = tuple(max(a, b) for a, b in zip(self.shape, other.shape))
        return BiPolyQ(self._padded(shape) + other._padded(shape))

    def __neg__(self) -> "BiPolyQ":
        return BiPolyQ(-self.coeffs)

    def __sub__(self, other: "BiPolyQ") -> "BiPolyQ":
        return self + (-other)

    def __mul__(self, other) -> "BiPolyQ":
        if not isinstance(other, BiPolyQ):
            return BiPolyQ(self.coeffs * other)
        # loop over the sparser factor, shift-and-add the other
        small, big = (self, other) if len(list(self.terms())) <= len(list(other.terms())) else (other, self)
        n = small.shape[0] + big.shape[0] - 1
        m = small.shape[1] + big.shape[1] - 1
        out = np.zeros((n, m), dtype=object)
        bn, bm = big.shape
        for i, j, c in small.terms():
            out[i : i + bn, j : j + bm] += c * big.coeffs
        return BiPolyQ(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPolyQ):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.coeffs == other.coeffs))

    def __call__(self, x, y):
        xs = [x**i for i in range(self.shape[0])]
        ys = [y**j for j in range(self.shape[1])]
        return sum(c * xs[i] * ys[j] for i, j, c in self.terms())

    def integrate01(self) -> Fraction:
        """Exact integral over the unit square.

        Uses a common denominator so the inner product stays in integers.
        """
        n, m = self.shape
        d = lcm_upto(max(n, m))
        w_x = np.array([d // (i + 1) for i in range(n)], dtype=object)
        w_y = np.array([d // (j + 1) for j in range(m)], dtype=object)
        coeffs = self.coeffs
        if any(isinstance(c, Fraction) for c in coeffs.flat):
            return sum(
                (Fraction(c) / ((i + 1) * (j + 1)) for i, j, c in self.terms()),
                Fraction(0),
            )
        total = int(w_x @ coeffs @ w_y)
        return Fraction(total, d * d)

    def __repr__(self) -> str:
        return f"BiPolyQ(shape={self.shape})"


# --------------------------------------------------------------------------
# truncated power series with a valuation shift
# --------------------------------------------------------------------------


class SeriesQ:
    """Truncated (Laurent) series ``x**valuation * sum(c_k x**k) + O(x**(valuation+order))``.

    ``order`` is the number of known coefficients.  Exact leading zeros are
    stripped on construction and moved into ``valuation``, so a series whose
    leading terms cancel (``x**2 + 2x - 1 + sqrt(...)`` for instance) keeps
    exactly the precision it really has.
    """

    __slots__ = ("coeffs", "order", "valuation")

    def __init__(self, coeffs: Sequence, order: int | None = None, valuation: int = 0):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("negative truncation order")
        cs = cs[:order] + [Fraction(0)] * max(0, order - len(cs))
        shift = 0
        while shift < len(cs) and cs[shift] == 0:
            shift += 1
        if shift == len(cs):
            # nothing nonzero is known: an O(x**(valuation+order)) blob
            self.coeffs = ()
            self.order = 0
            self.valuation = valuation + order
            return
        self.coeffs = tuple(cs[shift:])
        self.order = order - shift
        self.valuation = valuation + shift

    @classmethod
    def from_poly(cls, poly: PolyQ | Sequence, order: int) -> "SeriesQ":
        cs = poly.coeffs if isinstance(poly, PolyQ) else poly
        return cls(list(cs)[:order], order)

    @property
    def precision(self) -> int:
        """Absolute exponent of the big-O term."""
        return self.valuation + self.order

    def coefficient(self, power: int) -> Fraction:
        if power >= self.precision:
            raise IndexError(f"coefficient of x^{power} is beyond the truncation order")
        k = power - self.valuation
        if k < 0:
            return Fraction(0)
        return self.coeffs[k]

    def nonnegative_part(self) -> list[Fraction]:
        """Coefficients of ``x**0 .. x**(precision-1)``."""
        return [self.coefficient(p) for p in range(0, self.precision)]

    def shift(self, k: int) -> "SeriesQ":
        """Multiply by ``x**k`` (``k`` may be negative)."""
        return SeriesQ(self.coeffs, self.order, self.valuation + k)

    def __add__(self, other) -> "SeriesQ":
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "SeriesQ":
        return SeriesQ([-c for c in self.coeffs], self.order, self.valuation)

    def __sub__(self, other) -> "SeriesQ":
        return series_add(self, -_as_series(other, self.precision))

    def __mul__(self, other) -> "SeriesQ":
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SeriesQ":
        return series_pow(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesQ):
            return NotImplemented
        return (self.coeffs, self.order, self.valuation) == (
            other.coeffs,
            other.order,
            other.valuation,
        )

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"SeriesQ(x^{self.valuation}*[{head}{more}] + O(x^{self.precision}))"


def _as_series(f, order: int) -> SeriesQ:
    if isinstance(f, SeriesQ):
        return f
    return SeriesQ([as_fraction(f)], max(order, 1))


def series_add(f: SeriesQ, g) -> SeriesQ:
    g = _as_series(g, f.precision)
    v = min(f.valuation, g.valuation)
    top = min(f.precision, g.precision)
    cs = [Fraction(0)] * max(0, top - v)
    for s in (f, g):
        for k, c in enumerate(s.coeffs):
            p = s.valuation + k
            if p < top:
                cs[p - v] += c
    return SeriesQ(cs, top - v, v)


def series_mul(f: SeriesQ, g) -> SeriesQ:
    if not isinstance(g, SeriesQ):
        c = as_fraction(g)
        return SeriesQ([c * a for a in f.coeffs], f.order, f.valuation)
    order = min(f.order, g.order)
    cs = [Fraction(0)] * order
    for i in range(min(order, len(f.coeffs))):
        a = f.coeffs[i]
        if a:
            for j in range(order - i):
                cs[i + j] += a * g.coeffs[j]
    return SeriesQ(cs, order, f.valuation + g.valuation)


def _series_inverse(f: SeriesQ) -> SeriesQ:
    if not f.coeffs:
        raise ZeroDivisionError("series has no known nonzero coefficient")
    c0 = f.coeffs[0]
    inv = [Fraction(0)] * f.order
    inv[0] = 1 / c0
    for n in range(1, f.order):
        s = sum((f.coeffs[k] * inv[n - k] for k in range(1, n + 1)), Fraction(0))
        inv[n] = -s / c0
    return SeriesQ(inv, f.order, -f.valuation)


def series_pow(f: SeriesQ, k: int) -> SeriesQ:
    """Integer power; negative powers need an invertible leading coefficient.

    The valuation is tracked, so ``x**-3`` style factors are fine.
    """
    if k < 0:
        if not f.coeffs:
            raise ZeroDivisionError("division by a series with no known nonzero term")
        return series_pow(_series_inverse(f), -k)
    result = SeriesQ([1], f.order if f.coeffs else 0)
    base = f
    while k:
        if k & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        k >>= 1
    return result


def series_inv_sqrt(f: SeriesQ) -> SeriesQ:
    """``g`` with ``g**2 * f == 1`` to the truncation order; needs ``f(0) == 1``."""
    if f.valuation != 0 or not f.coeffs or f.coeffs[0] != 1:
        raise ValueError("series_inv_sqrt needs constant term 1")
    n = f.order
    # g' f = -(1/2) g f'  =>  coefficient recurrence for g
    a = f.coeffs
    g = [Fraction(0)] * n
    g[0] = Fraction(1)
    for m in range(1, n):
        # sum_{k=0}^{m} (m-k) g_{m-k} a_k  ... derived from 2 f g' + f' g = 0
        s = Fraction(0)
        for k in range(1, m + 1):
            s += (2 * (m - k) + k) * g[m - k] * a[k]
        g[m] = -s / (2 * m)
    return SeriesQ(g, n)


def series_sqrt(f: SeriesQ) -> SeriesQ:
    """Square root of a series with constant term 1."""
    return series_mul(f, series_inv_sqrt(f))
