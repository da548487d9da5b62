import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psicalc import (GridDomainTooSmall, GridFunction, NonIntegerGridArg,
                     Polynomial, falling_power, falling_power_poly,
                     format_rational, from_rebased, newton_interpolate,
                     rational)

from conftest import rand_poly

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
small_polys = st.lists(rationals, max_size=17).map(Polynomial)


def test_rational_serialization_round_trip():
    assert format_rational(Fraction(3, 7)) == "3/7"
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert format_rational(Fraction(5)) == "5"
    assert rational("3/7") == Fraction(3, 7)
    assert rational("-2") == Fraction(-2)
    assert rational(4) == Fraction(4)


def test_polynomial_canonical_form():
    assert Polynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert Polynomial((0, 0)).coeffs == ()
    assert Polynomial().degree == float("-inf")
    assert Polynomial((0, 1)).degree == 1
    assert Polynomial((1, 2)) == Polynomial([Fraction(1), Fraction(2), Fraction(0)])


def test_polynomial_arithmetic_examples():
    x = Polynomial.x()
    assert (x * x + Polynomial.one()) + (x - Polynomial.one()) == Polynomial((0, 1, 1))
    assert (x - Polynomial.one()) * (x + Polynomial.one()) == Polynomial((-1, 0, 1))
    assert Polynomial.monomial(3)(2) == 8


def test_polynomial_evaluation_is_exact():
    p = Polynomial((Fraction(1, 3), Fraction(-2, 7), 1))
    v = Fraction(5, 11)
    assert p(v) == Fraction(1, 3) - Fraction(2, 7) * v + v * v


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p


def test_rebase_examples():
    assert Polynomial.monomial(2).rebase(1) == (1, 2, 1)
    assert Polynomial.monomial(3).rebase(0) == (0, 0, 0, 1)
    assert Polynomial((0, -2, 1)).rebase(1) == (-1, 0, 1)


@settings(max_examples=60, deadline=None)
@given(small_polys, rationals, rationals)
def test_rebase_evaluation_identity(p, c, v):
    coeffs = p.rebase(c)
    assert p(v) == sum((cm * (v - c) ** m for m, cm in enumerate(coeffs)),
                       Fraction(0))


@settings(max_examples=40, deadline=None)
@given(small_polys, rationals)
def test_rebase_round_trip(p, c):
    assert from_rebased(p.rebase(c), c) == p


def test_falling_power_values():
    assert falling_power(3, 2) == 6
    assert falling_power(Fraction(7, 2), 0) == 1
    assert falling_power(2, 3) == 0


@given(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=12))
def test_falling_power_vanishes_inside_range(x, n):
    value = falling_power(x, n)
    if 0 <= x < n:
        assert value == 0
    else:
        # independent oracle: direct product
        expected = 1
        for j in range(n):
            expected *= x - j
        assert value == expected


def test_falling_power_poly_matches_scalar():
    for n in range(7):
        p = falling_power_poly(n)
        for x in range(-3, 8):
            assert p(x) == falling_power(x, n)


def test_newton_interpolation_recovers_polynomial():
    rng = random.Random(5)
    for _ in range(20):
        p = rand_poly(rng, 7)
        pts = [p(k) for k in range(int(p.degree) + 2)] if p else [Fraction(0)]
        assert newton_interpolate(pts) == p


def test_grid_function_domain_checks():
    g = GridFunction([1, 4, 9])
    assert g(2) == 9
    with pytest.raises(GridDomainTooSmall):
        g(3)
    with pytest.raises(NonIntegerGridArg):
        g(Fraction(1, 2))
    with pytest.raises(GridDomainTooSmall):
        GridFunction([])


def test_grid_delta_nabla_shift():
    p = Polynomial((0, 0, 1))
    g = GridFunction.sample(p, 5)
    d = g.delta()
    assert d.lo == 0 and d.hi == 4
    assert [d(k) for k in range(5)] == [2 * k + 1 for k in range(5)]
    b = g.nabla()
    assert b.lo == 1 and b.hi == 5
    assert [b(k) for k in range(1, 6)] == [2 * k - 1 for k in range(1, 6)]
    s = g.shifted(2)
    assert s(1) == 9  # f(1+2)


def test_grid_partial_sums():
    g = GridFunction.sample(Polynomial((0, 0, 1)), 4)
    s = g.partial_sums()
    assert s.hi == 5
    assert s(4) == 1 + 4 + 9
    assert s(0) == 0
    with pytest.raises(GridDomainTooSmall):
        g.nabla().partial_sums()


def test_single_point_grid_rejects_differences():
    g = GridFunction([3])
    with pytest.raises(GridDomainTooSmall):
        g.delta()
