from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errsums.numkernel import (
    BiPolyQ,
    PolyQ,
    SeriesQ,
    binomial,
    lcm_upto,
    pochhammer,
    series_add,
    series_inv_sqrt,
    series_mul,
    series_pow,
    series_sqrt,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1
    assert binomial(4, -1) == 0


def test_binomial_rejects_negative_upper():
    with pytest.raises(ValueError):
        binomial(-1, 0)


@given(st.integers(1, 100), st.data())
def test_pascal_rule(n, data):
    k = data.draw(st.integers(1, n))
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_pochhammer_examples():
    assert pochhammer(Fraction(5, 2), 3) == Fraction(315, 8)
    assert pochhammer(Fraction(7, 3), 0) == 1
    for k in range(10):
        assert pochhammer(1, k) == factorial(k)


@given(rationals, st.integers(0, 20), st.integers(0, 20))
def test_pochhammer_splits(x, m, n):
    assert pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(x + m, n)


def test_lcm_upto():
    assert lcm_upto(0) == 1
    assert lcm_upto(1) == 1
    assert lcm_upto(6) == 60
    assert lcm_upto(10) == 2520


@given(rationals, rationals)
def test_rational_addition_exact(a, b):
    s = a + b
    assert s * a.denominator * b.denominator == a.numerator * b.denominator + b.numerator * a.denominator


def test_polyq_basics():
    p = PolyQ([0, 1, -1, 0, 1])
    assert p.degree == 4
    assert PolyQ([1, 2, 0, 0]).degree == 1
    assert PolyQ().degree == -1
    assert (PolyQ([1, 1]) ** 2) == PolyQ([1, 2, 1])
    assert p(1) == 1
    assert p.integrate01() == Fraction(1, 2) - Fraction(1, 3) + Fraction(1, 5)
    assert (p - p) == PolyQ()


def test_bipolyq_integral_matches_fraction_sum():
    r = BiPolyQ.from_terms([(2, 2, 1), (1, 2, -1), (2, 1, -1), (0, 0, 1)])
    expected = Fraction(1, 9) - Fraction(1, 6) - Fraction(1, 6) + 1
    assert r.integrate01() == expected
    assert r(Fraction(1), Fraction(1)) == 0
    sq = r * r
    assert sq(Fraction(1, 2), Fraction(1, 3)) == r(Fraction(1, 2), Fraction(1, 3)) ** 2


def test_inv_sqrt_examples():
    f = SeriesQ([1, -4, 2, 0, 1], 6)
    g = series_inv_sqrt(f)
    assert list(g.coeffs[:4]) == [1, 2, 5, 14]
    assert series_inv_sqrt(SeriesQ([1], 5)).coeffs == (1, 0, 0, 0, 0)
    h = series_inv_sqrt(SeriesQ([1, -2], 4))
    assert list(h.coeffs[:3]) == [1, 1, Fraction(3, 2)]


def test_inv_sqrt_rejects_bad_constant():
    with pytest.raises(ValueError):
        series_inv_sqrt(SeriesQ([2, 1], 4))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(max_denominator=9).filter(lambda q: abs(q) < 10), min_size=0, max_size=12),
       st.integers(1, 64))
def test_inv_sqrt_squares_to_inverse(tail, order):
    f = SeriesQ([1] + tail, order)
    g = series_inv_sqrt(f)
    prod = series_mul(series_mul(g, g), f)
    assert prod.valuation == 0
    assert prod.order == order
    assert prod.coeffs[0] == 1
    assert all(c == 0 for c in prod.coeffs[1:])


def test_series_pow_and_add():
    one_plus_x = SeriesQ([1, 1], 6)
    assert list(series_pow(one_plus_x, 2).coeffs) == [1, 2, 1, 0, 0, 0]
    geo = series_pow(SeriesQ([1, -1], 8), -1)
    assert list(geo.coeffs) == [1] * 8
    s = series_add(SeriesQ([1, 2], 5), SeriesQ([-1, 1], 3))
    # leading terms cancel: valuation moves, precision is the smaller one
    assert s.valuation == 1 and s.precision == 3 and s.coeffs == (3, 0)


def test_series_pow_negative_needs_nonzero_head():
    with pytest.raises(ZeroDivisionError):
        series_pow(SeriesQ([0, 0], 2), -1)


def test_laurent_valuation_tracking():
    # x^-1 * (x + x^2) = 1 + x
    f = SeriesQ([0, 1, 1], 5).shift(-1)
    assert f.valuation == 0
    assert f.nonnegative_part()[:2] == [1, 1]
    inv_x3 = SeriesQ([1], 10, valuation=3) ** -1
    assert inv_x3.valuation == -3


def test_series_sqrt():
    f = SeriesQ([1, 2, 1], 6)
    assert list(series_sqrt(f).coeffs) == [1, 1, 0, 0, 0, 0]


def test_coefficient_beyond_order_is_refused():
    f = SeriesQ([1, 1], 2)
    with pytest.raises(IndexError):
        f.coefficient(2)
