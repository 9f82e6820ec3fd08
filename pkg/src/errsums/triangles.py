"""Integer coefficient triangles behind the rational error-sum series for zeta(2), zeta(3).

Two polynomial families in one variable,

    p_nu = t^2 p_{nu-1} + t(1-t) p_{nu-2},      p_0 = 1, p_1 = t^2,
    q_nu = t(2-t) q_{nu-1} + t(t-1) q_{nu-2},   q_0 = 1, q_1 = 2t - t^2,

expand 1/(1 + x^2y^2 - xy^2 - x^2y) and 1/(1 - x^2y^2 - 2xy + xy^2 + x^2y) in
powers of x.  Their coefficient triangles a and b, and the bivariate family r
(layers of the cube c), turn the error sums into row series.  On top of the
exact part sits a set of observed identities (binomial closed forms,
symmetry, generating functions for the diagonals, four-term recurrences for
the row functionals, order-2d recurrences for the b diagonal); every check
here returns a :class:`CheckReport` saying whether the identity is proven or
only observed over the range tried.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import mp, mpf

from .numkernel import (
    BiPolyQ,
    CheckReport,
    PolyQ,
    SeriesQ,
    binomial,
    series_inv_sqrt,
    series_mul,
    series_pow,
    series_sqrt,
)
from .oracles import to_mpf

__all__ = [
    "KINDS",
    "CoeffTriangle",
    "CoeffCube",
    "RowFunctional",
    "SeriesPartial",
    "poly_family",
    "triangle",
    "r_family",
    "coeff_cube",
    "generating_check",
    "lemma_recurrence_check",
    "binomial_formula",
    "binomial_formula_check",
    "row_functionals",
    "functional_recurrence",
    "recurrence_replay",
    "FUNCTIONAL_SEEDS",
    "thm_series",
    "diagonal_gf",
    "diagonal_gf_root",
    "diagonal_check",
    "characteristic_poly",
    "order2d_recurrence",
    "a108626_specialization",
    "central_b",
    "symmetry_and_rowsum_check",
]

KINDS = ("a", "b")
_FAMILY = {"a": "p", "b": "q", "p": "p", "q": "q"}

# multipliers of the previous two rows, lowest power first
_STEP = {
    "p": ((0, 0, 1), (0, 1, -1)),
    "q": ((0, 2, -1), (0, -1, 1)),
}


def _family(kind: str) -> str:
    if kind not in _FAMILY:
        raise ValueError(f"kind must be one of a, b, p, q; got {kind!r}")
    return _FAMILY[kind]


def _mul_add(u, row1, v, row2, length):
    out = [0] * length
    for i, c in enumerate(u):
        if c:
            for j, x in enumerate(row1):
                out[i + j] += c * x
    for i, c in enumerate(v):
        if c:
            for j, x in enumerate(row2):
                out[i + j] += c * x
    return out


@lru_cache(maxsize=4)
def _recursion_rows(fam: str, nu_max: int) -> tuple[tuple[int, ...], ...]:
    u, v = _STEP[fam]
    rows = [(1,)]
    prev2, prev1 = (0,), (1,)
    for nu in range(1, nu_max + 1):
        row = _mul_add(u, prev1, v, prev2, 2 * nu + 2)[: 2 * nu + 1]
        if any(not isinstance(c, int) for c in row):
            raise ArithmeticError(f"non-integer coefficient in row {nu}")
        rows.append(tuple(row))
        prev2, prev1 = prev1, rows[-1]
    return tuple(rows)


def _rows(kind: str, nu_max: int):
    fam = _family(kind)
    # reuse a longer cached run when one exists
    return _recursion_rows(fam, max(nu_max, 64))[: nu_max + 1]


def poly_family(kind: str, nu_max: int) -> list[PolyQ]:
    """p_0 .. p_nu_max (kind ``p`` or ``a``) or q_0 .. q_nu_max (``q`` or ``b``)."""
    if nu_max < 0:
        raise ValueError("nu_max must be nonnegative")
    return [PolyQ(row) for row in _rows(kind, nu_max)]


@dataclass(frozen=True)
class CoeffTriangle:
    """Rows a_{nu,0..2nu} (or b); lookups outside a row return 0."""

    kind: str
    rows: tuple[tuple[int, ...], ...]
    route: str = "recursion"

    def __post_init__(self):
        for nu, row in enumerate(self.rows):
            if len(row) != 2 * nu + 1:
                raise ValueError(f"row {nu} has {len(row)} entries, expected {2 * nu + 1}")
            if any(not isinstance(c, int) for c in row):
                raise ArithmeticError(f"non-integer entry in row {nu}")

    @property
    def nu_max(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, idx: tuple[int, int]) -> int:
        nu, mu = idx
        if nu < 0 or nu > self.nu_max:
            if nu < 0:
                return 0
            raise IndexError(f"row {nu} not generated (nu_max = {self.nu_max})")
        row = self.rows[nu]
        return row[mu] if 0 <= mu < len(row) else 0

    def diagonal(self, d: int, count: int) -> list[int]:
        """T[n, n+d] for n = 0 .. count-1."""
        return [self[n, n + d] for n in range(count)]

    def records(self):
        for nu, row in enumerate(self.rows):
            for mu, c in enumerate(row):
                yield nu, mu, c

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nu", "mu", "value"])
        w.writerows(self.records())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "route": self.route, "rows": [list(r) for r in self.rows]})


def triangle(kind: str, nu_max: int, route: str = "recursion") -> CoeffTriangle:
    """The a (``kind='a'``) or b triangle through row nu_max.

    ``route`` picks the generator: the polynomial recursion, the
    coefficient-level recurrence with closed-form edges, or the double
    binomial sum (the last is an observed formula, not a proof).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    if route == "recursion":
        rows = _rows(kind, nu_max)
    elif route == "lemma_recurrence":
        rows = _lemma_rows(kind, nu_max)
    elif route == "binomial_formula":
        rows = tuple(tuple(binomial_formula(kind, nu, mu) for mu in range(2 * nu + 1)) for nu in range(nu_max + 1))
    else:
        raise ValueError(f"unknown route {route!r}")
    return CoeffTriangle(kind, tuple(rows), route)


# ------------------------------------------------------------ r family, cube

_L = BiPolyQ.from_terms([(2, 2, 1), (1, 2, -1), (2, 1, -1), (0, 0, 1)])
_P = BiPolyQ.from_terms([(2, 2, 1), (1, 2, -1), (2, 1, -1), (1, 1, 1)])
# r_2 as listed term by term (x power, y power, coefficient)
_R2 = BiPolyQ.from_terms(
    [
        (4, 4, 1), (3, 4, -2), (4, 3, -2), (2, 4, 1), (4, 2, 1), (3, 3, 2),
        (2, 2, 1), (1, 2, -1), (2, 1, -1), (1, 1, -1), (0, 0, 1),
    ]
)  # fmt: skip


@lru_cache(maxsize=4)
def _r_cached(nu_max: int) -> tuple[BiPolyQ, ...]:
    rs = [BiPolyQ([[1]]), _L, _R2]
    for _ in range(3, nu_max + 1):
        rs.append(_L * rs[-1] - _P * rs[-2])
    return tuple(rs[: nu_max + 1])


def r_family(nu_max: int) -> list[BiPolyQ]:
    """r_0 .. r_nu_max from the listed seeds and r_nu = L r_{nu-1} - P r_{nu-2}."""
    if nu_max < 0:
        raise ValueError("nu_max must be nonnegative")
    return list(_r_cached(max(nu_max, 2))[: nu_max + 1])


@dataclass(frozen=True)
class CoeffCube:
    """Layers c_{nu, mu1, mu2}, each a (2nu+1) x (2nu+1) integer matrix."""

    layers: tuple[np.ndarray, ...]

    def __post_init__(self):
        for nu, layer in enumerate(self.layers):
            if layer.shape != (2 * nu + 1, 2 * nu + 1):
                raise ValueError(f"layer {nu} has shape {layer.shape}")

    def __getitem__(self, idx):
        nu, i, j = idx
        layer = self.layers[nu]
        n = layer.shape[0]
        return int(layer[i, j]) if 0 <= i < n and 0 <= j < n else 0

    def records(self):
        for nu, layer in enumerate(self.layers):
            for i in range(layer.shape[0]):
                for j in range(layer.shape[1]):
                    yield nu, i, j, int(layer[i, j])


def coeff_cube(nu_max: int) -> CoeffCube:
    layers = []
    for nu, r in enumerate(r_family(nu_max)):
        m = np.zeros((2 * nu + 1, 2 * nu + 1), dtype=object)
        for i, j, c in r.terms():
            if Fraction(c).denominator != 1:
                raise ArithmeticError(f"non-integer cube entry at layer {nu}")
            m[i, j] = int(c)
        layers.append(m)
    return CoeffCube(tuple(layers))


def generating_check(kind: str, nu_max: int) -> CheckReport:
    """Truncated product (sum of family members times w^nu) x denominator == 1.

    ``kind`` is p, q or r.  The seeds are listed independently of the
    recursion, so this confirms they are the expansion of the stated
    rational function; beyond the seeds it follows from the recursion.
    """
    if kind == "r":
        fam = r_family(nu_max)
        one, zero, d1, d2 = BiPolyQ([[1]]), BiPolyQ([[0]]), -_L, _P
    else:
        fam = poly_family(kind, nu_max)
        u, v = _STEP[_family(kind)]
        one, zero, d1, d2 = PolyQ([1]), PolyQ(), -PolyQ(u), -PolyQ(v)
    report = CheckReport(f"generating_function({kind})", 0, proven=True)
    for nu in range(nu_max + 1):
        coeff = fam[nu]
        if nu >= 1:
            coeff = coeff + d1 * fam[nu - 1]
        if nu >= 2:
            coeff = coeff + d2 * fam[nu - 2]
        if coeff != (one if nu == 0 else zero):
            report.first_failure = nu
            return report
        report.checked += 1
    return report


# ------------------------------------------------------------ coefficient recurrences


def _lemma_rows(kind: str, nu_max: int):
    seeds = _rows(kind, 2)
    rows = [list(r) for r in seeds[: nu_max + 1]]

    def e(nu, mu):
        row = rows[nu]
        return row[mu] if 0 <= mu < len(row) else 0

    for nu in range(3, nu_max + 1):
        row = [0] * (2 * nu + 1)
        for mu in range(2, 2 * nu - 2):
            if kind == "a":
                row[mu] = e(nu - 1, mu - 2) + e(nu - 2, mu - 1) - e(nu - 2, mu - 2)
            else:
                row[mu] = -e(nu - 1, mu - 2) + 2 * e(nu - 1, mu - 1) + e(nu - 2, mu - 2) - e(nu - 2, mu - 1)
        s = (-1) ** nu
        if kind == "a":
            row[2 * nu], row[2 * nu - 1], row[2 * nu - 2] = 1, 0, 1 - nu
        else:
            row[2 * nu] = s
            row[2 * nu - 1] = -2 * s * nu
            row[2 * nu - 2] = s * (2 * nu * nu - nu - 1)
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def lemma_recurrence_check(kind: str, nu_max: int) -> CheckReport:
    """Coefficient recurrence with closed-form top entries vs. the polynomial recursion.

    For nu >= 3 the rows have zero t^0 and t^1 terms, interior entries from
    the four-term coefficient recurrence and the three top entries
    1, 0, 1-nu (a) or (-1)^nu, 2(-1)^(nu+1) nu, (-1)^nu (2nu^2-nu-1) (b).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    if nu_max < 3:
        raise ValueError("nu_max must be at least 3")
    ref = _rows(kind, nu_max)
    alt = _lemma_rows(kind, nu_max)
    report = CheckReport(f"coefficient_recurrence({kind})", 0, proven=True)
    for nu in range(3, nu_max + 1):
        if ref[nu] != alt[nu]:
            mu = next(m for m in range(2 * nu + 1) if ref[nu][m] != alt[nu][m])
            report.first_failure = (nu, mu, ref[nu][mu], alt[nu][mu])
            return report
        report.checked += 1
    return report


# ------------------------------------------------------------ binomial closed forms


def _c(n: int, k: int) -> int:
    # zero outside 0 <= k <= n, including negative n
    if n < 0 or k < 0 or k > n:
        return 0
    return binomial(n, k)


def binomial_formula(kind: str, nu: int, mu: int) -> int:
    """Observed double binomial sum for a_{nu,mu} or b_{nu,mu} (unproved)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    if not 0 <= mu <= 2 * nu:
        raise ValueError("need 0 <= mu <= 2 nu")
    total = 0
    for k in range(nu + 1):
        sign = (-1) ** (nu + k) if kind == "a" else (-1) ** (nu + mu)
        for i in range(k + 1):
            total += sign * _c(mu - k, 2 * mu - nu - k - i) * _c(mu - k, i) * _c(mu - i, k - i)
    return total


def binomial_formula_check(kind: str, nu_max: int = 20) -> CheckReport:
    tri = triangle(kind, nu_max)
    report = CheckReport(f"binomial_formula({kind})", 0)
    agree = 0
    for nu in range(nu_max + 1):
        for mu in range(2 * nu + 1):
            v = binomial_formula(kind, nu, mu)
            report.checked += 1
            if v == tri[nu, mu]:
                agree += 1
            elif report.first_failure is None:
                report.first_failure = (nu, mu, tri[nu, mu], v)
    report.details["agreement"] = agree / report.checked
    return report


# ------------------------------------------------------------ row functionals


@dataclass(frozen=True)
class RowFunctional:
    """alpha_nu = sum_mu a_{nu,mu}/(mu+1) = integral of p_nu over [0,1]; beta likewise."""

    kind: str
    values: tuple[Fraction, ...]


_FUNCTIONAL_KIND = {"alpha": "a", "beta": "b"}

FUNCTIONAL_SEEDS = {
    "alpha": (Fraction(1), Fraction(1, 3), Fraction(11, 30), Fraction(17, 70)),
    "beta": (Fraction(1), Fraction(2, 3), Fraction(11, 30), Fraction(47, 210)),
}


def _functional_kind(kind: str) -> str:
    if kind not in _FUNCTIONAL_KIND:
        raise ValueError(f"kind must be 'alpha' or 'beta', got {kind!r}")
    return _FUNCTIONAL_KIND[kind]


@lru_cache(maxsize=4)
def _functional_values(tri_kind: str, nu_max: int) -> tuple[Fraction, ...]:
    return tuple(
        sum((Fraction(c, mu + 1) for mu, c in enumerate(row)), Fraction(0)) for row in _rows(tri_kind, nu_max)
    )


def row_functionals(kind: str, nu_max: int) -> RowFunctional:
    """Exact alpha_0..alpha_nu_max (``kind='alpha'``) or beta values from the rows."""
    tri_kind = _functional_kind(kind)
    if nu_max < 0:
        raise ValueError("nu_max must be nonnegative")
    return RowFunctional(kind, _functional_values(tri_kind, nu_max))


def _functional_step(kind: str, n: int, v1, v2, v3, v4, one=Fraction(1)):
    d = 2 * n + 1
    if kind == "alpha":
        return (
            one * (4 * n - 1) / d * v1
            - one * (2 * n - 2) / d * v2
            - one * (n - 1) / (2 * d) * v3
            + one * (n - 2) / (2 * d) * v4
        )
    return (
        one * (6 * n - 1) / d * v1
        - one * (6 * n - 5) / d * v2
        + one * (5 * n - 7) / (2 * d) * v3
        - one * (n - 2) / (2 * d) * v4
    )


def functional_recurrence(kind: str, nu_max: int) -> list[Fraction]:
    """Values from the observed four-term recurrence and its four seeds, exactly."""
    _functional_kind(kind)
    vals = list(FUNCTIONAL_SEEDS[kind])
    for n in range(4, nu_max + 1):
        vals.append(_functional_step(kind, n, vals[-1], vals[-2], vals[-3], vals[-4]))
    return vals[: nu_max + 1]


def recurrence_replay(kind: str, nu_max: int = 200) -> CheckReport:
    """Compare the four-term recurrence against the direct values (observed identity)."""
    if nu_max < 4:
        raise ValueError("nu_max must be at least 4")
    direct = row_functionals(kind, nu_max).values
    rec = functional_recurrence(kind, nu_max)
    report = CheckReport(f"functional_recurrence({kind})", 0)
    for nu in range(nu_max + 1):
        if direct[nu] != rec[nu]:
            report.first_failure = (nu, direct[nu], rec[nu])
            return report
        report.checked += 1
    return report


# ------------------------------------------------------------ series for the error sums


@dataclass(frozen=True)
class SeriesPartial:
    value: mpf
    last_term: mpf
    terms: int
    method: str


EXACT_ROWS = 64


def _graded_rule(panels: int = 40, nodes: int = 30):
    x0, w0 = np.polynomial.legendre.leggauss(nodes)
    cuts = [0.0] + [1 - 2.0**-k for k in range(1, panels + 1)] + [1.0]
    xs, ws = [], []
    for a, b in zip(cuts[:-1], cuts[1:]):
        xs.append((b - a) / 2 * x0 + (a + b) / 2)
        ws.append((b - a) / 2 * w0)
    return np.concatenate(xs), np.concatenate(ws)


def _pointwise_terms(fam: str, nu_from: int, nu_to: int):
    """Yield (nu, integral of the nu-th polynomial) for nu_from <= nu <= nu_to.

    The polynomials are evaluated by their recursion at graded Gauss nodes;
    on [0, 1) the recursion damps, so float64 is stable here.
    """
    t, w = _graded_rule()
    if fam == "p":
        u, v = t * t, t * (1 - t)
        prev2, prev1 = np.ones_like(t), t * t
    else:
        u, v = t * (2 - t), t * (t - 1)
        prev2, prev1 = np.ones_like(t), t * (2 - t)
    for nu in range(2, nu_to + 1):
        prev2, prev1 = prev1, u * prev1 + v * prev2
        if nu >= nu_from:
            yield nu, float(w @ prev1)


def _cube_pointwise_terms(nu_from: int, nu_to: int):
    x, wx = _graded_rule(30, 20)
    X, Y = x[:, None], x[None, :]
    W = wx[:, None] * wx[None, :]
    xy = X * Y
    L = 1 - xy * (X + Y) + xy * xy
    P = xy - xy * (X + Y) + xy * xy
    prev2 = np.ones_like(xy)
    prev1 = L.copy()
    for nu in range(2, nu_to + 1):
        prev2, prev1 = prev1, L * prev1 - P * prev2
        if nu >= nu_from:
            yield nu, float(np.sum(W * prev1))


def thm_series(which: str, N: int, prec: int = 64, method: str = "auto") -> SeriesPartial:
    """Partial sums of the row series for the three error sums.

    alpha:  1 + sum_{nu=1}^{N} alpha_nu/(nu+1)          (signed zeta(2) sum)
    beta:   1 + sum_{nu=1}^{N} beta_nu/(nu+1)           (absolute zeta(2) sum)
    cube:   1/2 + 1/2 sum_{nu=1}^{N} gamma_nu/(nu+1)    (zeta(3) sum)
    with gamma_nu the integral of r_nu over the unit square.

    Methods: ``exact`` sums rationals (fine for N in the low hundreds);
    ``pointwise`` keeps the first 64 terms exact and integrates the later
    polynomials numerically from their recursion; ``recurrence`` (alpha and
    beta only) runs the observed four-term recurrence in mpf.  The beta
    recurrence amplifies rounding error without bound and is useless past a
    few hundred terms.  ``auto`` means exact up to 64 terms, else pointwise.
    The terms decay like 1/nu^2, so the tail after N terms is about 1/N.
    """
    if which not in ("alpha", "beta", "cube"):
        raise ValueError(f"which must be alpha, beta or cube; got {which!r}")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if method == "auto":
        method = "exact" if N <= EXACT_ROWS else "pointwise"
    if method not in ("exact", "pointwise", "recurrence"):
        raise ValueError(f"unknown method {method!r}")
    if method == "recurrence" and which == "cube":
        raise ValueError("the cube series has no row recurrence")

    with mp.workprec(prec):
        head = mpf(1) if which != "cube" else mpf(1) / 2
        scale = mpf(1) if which != "cube" else mpf(1) / 2
        if method == "recurrence":
            total, last = _recurrence_sum(which, N)
            return SeriesPartial(+(head + total), +last, N, method)
        n_exact = N if method == "exact" else min(N, EXACT_ROWS)
        exact = _exact_terms(which, n_exact)
        total = sum((v / (nu + 1) for nu, v in enumerate(exact) if nu >= 1), Fraction(0))
        value = head + scale * to_mpf(total)
        last = scale * to_mpf(exact[-1]) / len(exact) if N >= 1 else mpf(0)
        if N > n_exact:
            if which == "cube":
                terms = _cube_pointwise_terms(n_exact + 1, N)
            else:
                terms = _pointwise_terms(_family(_FUNCTIONAL_KIND[which]), n_exact + 1, N)
            acc = []
            for nu, g in terms:
                acc.append(g / (nu + 1))
            value += scale * mpf(float(np.sum(np.array(acc))))
            last = scale * mpf(acc[-1])
        return SeriesPartial(+value, +last, N, method)


def _exact_terms(which: str, n: int) -> tuple[Fraction, ...]:
    if which == "cube":
        return tuple(_cube_functionals(max(n, 2))[: n + 1])
    return row_functionals(which, n).values


@lru_cache(maxsize=2)
def _cube_functionals(nu_max: int) -> tuple[Fraction, ...]:
    return tuple(r.integrate01() for r in r_family(nu_max))


def _recurrence_sum(kind: str, N: int):
    seeds = [to_mpf(s) for s in FUNCTIONAL_SEEDS[kind]]
    total = sum(seeds[nu] / (nu + 1) for nu in range(1, min(N, 3) + 1))
    last = seeds[min(N, 3)] / (min(N, 3) + 1)
    v = seeds
    one = mpf(1)
    for n in range(4, N + 1):
        x = _functional_step(kind, n, v[3], v[2], v[1], v[0], one)
        v = [v[1], v[2], v[3], x]
        last = x / (n + 1)
        total += last
    return total, last


# ------------------------------------------------------------ generating functions of diagonals

# (S, u, sign of the root) for each triangle
_GF = {
    "a": ((1, 0, 2, -4, 1), (1, 0, 1), -1),
    "b": ((1, -4, 2, 0, 1), (-1, 2, 1), 1),
}


def characteristic_poly(d: int, kind: str = "b") -> PolyQ:
    """(1/2^d) sum_i C(d, 2i) S^i u^(d-2i), the numerator of the order-d diagonal function."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    S, u, _ = _GF[kind]
    S, u = PolyQ(S), PolyQ(u)
    total = PolyQ([0])
    for i in range(d // 2 + 1):
        total = total + (S**i) * (u ** (d - 2 * i)) * binomial(d, 2 * i)
    return total * Fraction(1, 2**d)


def diagonal_gf(kind: str, d: int, N: int) -> list[int]:
    """First N nonnegative-power coefficients of sum_k C(d,2k) S^k u^(d-2k) / ((2x^3)^d sqrt(S)).

    Observed to give the diagonal T[n, n+d] for n = d, d+1, ... (unproved).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    if d < 0:
        raise ValueError("negative offsets are not covered by the generating functions")
    if N < 1:
        raise ValueError("N must be >= 1")
    S = _GF[kind][0]
    order = N + 3 * d + 1
    num = SeriesQ.from_poly(characteristic_poly(d, kind), order)
    inv = series_inv_sqrt(SeriesQ.from_poly(list(S), order))
    # the 2^d of (2x^3)^d cancels the 1/2^d inside the characteristic polynomial
    f = series_mul(num, inv).shift(-3 * d)
    if f.precision < N:
        raise ArithmeticError("series lost too much precision to valuation shifts")
    return _integers(f.nonnegative_part()[:N])


def diagonal_gf_root(kind: str, d: int, N: int) -> list[int]:
    """Same diagonal from ((u +- sqrt S)/(2x^3))^d / sqrt S, a second route."""
    if kind not in KINDS:
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    if d < 0 or N < 1:
        raise ValueError("need d >= 0 and N >= 1")
    S, u, sign = _GF[kind]
    order = N + 3 * d + 4
    s_series = SeriesQ.from_poly(list(S), order)
    root = series_sqrt(s_series)
    g = (SeriesQ.from_poly(list(u), order) + root * sign).shift(-3) * Fraction(1, 2)
    if g.valuation < 0:
        raise ArithmeticError("root branch does not cancel the pole")
    f = series_mul(series_pow(g, d), series_inv_sqrt(s_series)) if d else series_inv_sqrt(s_series)
    if f.precision < N:
        raise ArithmeticError("series lost too much precision to valuation shifts")
    return _integers(f.nonnegative_part()[:N])


def _integers(cs) -> list[int]:
    out = []
    for c in cs:
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer series coefficient {c}")
        out.append(int(c))
    return out


def diagonal_check(kind: str, d: int, N: int = 30) -> CheckReport:
    """Both generating-function routes vs. the triangle diagonal T[n, n+d], n = d .. d+N-1."""
    tri = triangle(kind, N + 2 * d)
    want = [tri[n, n + d] for n in range(d, d + N)]
    report = CheckReport(f"diagonal_gf({kind},d={d})", 0)
    a, b = diagonal_gf(kind, d, N), diagonal_gf_root(kind, d, N)
    for j in range(N):
        if not want[j] == a[j] == b[j]:
            report.first_failure = (j + d, want[j], a[j], b[j])
            return report
        report.checked += 1
    return report


# ------------------------------------------------------------ central diagonal of b


def central_b(n: int) -> int:
    """b_{n,n} from sum_k sum_i C(n-k,i)^2 C(n-i,k-i)."""
    return sum(_c(n - k, i) ** 2 * _c(n - i, k - i) for k in range(n + 1) for i in range(k + 1))


def _order2d_rhs(d: int, n: int) -> int:
    return (-1) ** d * sum(
        _c(n - k, d + i) * _c(n - k, i) * _c(n - i, k - i) for k in range(n + 1) for i in range(k + 1)
    )


def order2d_recurrence(d: int, n_max: int = 20) -> CheckReport:
    """sum_k c_k A(n+k) = (-1)^d sum sum C(n-k,d+i) C(n-k,i) C(n-i,k-i), 0 <= n <= n_max.

    A(n) = b_{n,n}; c_k is the coefficient of x^(2d-k) in the characteristic
    polynomial.  The diagonal also has to match the triangle itself.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    chi = characteristic_poly(d)
    c = [chi[2 * d - k] for k in range(2 * d + 1)]
    top = n_max + 2 * d
    tri = triangle("b", top)
    A = [central_b(n) for n in range(top + 1)]
    report = CheckReport(f"order2d_recurrence(d={d})", 0)
    report.details["c"] = [str(x) for x in c]
    if A != tri.diagonal(0, top + 1):
        report.first_failure = ("diagonal", next(n for n in range(top + 1) if A[n] != tri[n, n]))
        return report
    for n in range(n_max + 1):
        lhs = sum(c[k] * A[n + k] for k in range(2 * d + 1))
        rhs = _order2d_rhs(d, n)
        if lhs != rhs:
            report.first_failure = (n, lhs, rhs)
            return report
        report.checked += 1
    return report


def a108626_specialization(n_max: int = 20) -> CheckReport:
    """A(n+2) - 2A(n+1) - A(n) = 2 sum sum C(n-k+1,i-1) C(n-k+1,i) C(n-i+1,k-i)."""
    report = CheckReport("central_b_three_term", 0)
    A = [central_b(n) for n in range(n_max + 3)]
    for n in range(n_max + 1):
        lhs = A[n + 2] - 2 * A[n + 1] - A[n]
        rhs = 2 * sum(
            _c(n - k + 1, i - 1) * _c(n - k + 1, i) * _c(n - i + 1, k - i)
            for k in range(n + 1)
            for i in range(k + 1)
        )
        if lhs != rhs:
            report.first_failure = (n, lhs, rhs)
            return report
        report.checked += 1
    return report


# ------------------------------------------------------------ row sums and symmetry


def symmetry_and_rowsum_check(kind: str, nu_max: int, eval_max: int = 200) -> list[CheckReport]:
    """Row sums (proven), column sums and symmetry on the zero-extended square (observed).

    Row sums are p_nu(1) = q_nu(1) = 1, which the recursion forces at t = 1;
    they are checked for nu <= eval_max.  The column sums
    sum_{mu <= 2nu} T[mu, nu] and T[nu, mu] = T[mu, nu] for nu, mu <= nu_max
    are observations.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    if nu_max < 2:
        raise ValueError("nu_max must be at least 2")
    tri = triangle(kind, max(2 * nu_max, eval_max))

    rows = CheckReport(f"row_sums({kind})", 0, proven=True)
    for nu in range(eval_max + 1):
        if sum(tri.rows[nu]) != 1:
            rows.first_failure = nu
            break
        rows.checked += 1

    cols = CheckReport(f"column_sums({kind})", 0)
    for nu in range(nu_max + 1):
        if sum(tri[mu, nu] for mu in range(2 * nu + 1)) != 1:
            cols.first_failure = nu
            break
        cols.checked += 1

    sym = CheckReport(f"symmetry({kind})", 0)
    for nu in range(nu_max + 1):
        bad = next((mu for mu in range(nu_max + 1) if tri[nu, mu] != tri[mu, nu]), None)
        if bad is not None:
            sym.first_failure = (nu, bad)
            break
        sym.checked += 1
    return [rows, cols, sym]
