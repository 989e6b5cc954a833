from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from legendre_hp.combinatorics import (
    double_factorial,
    p_poly,
    pochhammer,
    pochhammer_poly,
    sigma_closed,
    sigma_direct,
    stirling2,
    stirling2_recurrence,
)

# Computed independently with sympy's rf/binomial summation.
SIGMA_TABLE = {
    (0, 0): Fraction(2),
    (1, 0): Fraction(16, 15),
    (1, 1): Fraction(-4, 15),
    (2, 3): Fraction(16, 315),
    (3, 2): Fraction(-512, 45045),
    (4, 8): Fraction(2881792, 2297295),
    (5, 1): Fraction(-16384, 14549535),
    (6, 11): Fraction(4954112, 11022375),
}


@pytest.mark.parametrize("mn,value", SIGMA_TABLE.items())
def test_sigma_direct_frozen(mn, value):
    assert sigma_direct(*mn) == value


@pytest.mark.parametrize("m", range(0, 13))
def test_sigma_closed_equals_direct(m):
    for n in range(2 * m + 1):
        assert sigma_closed(m, n) == sigma_direct(m, n), (m, n)


def test_sigma_closed_rejects_short_range():
    with pytest.raises(ValueError):
        sigma_closed(1, 3)
    with pytest.raises(ValueError):
        sigma_direct(-1, 0)


@pytest.mark.parametrize("n", range(0, 10))
def test_p_poly_degree(n):
    assert p_poly(n).degree == n
    assert p_poly(n).var == "m"


def test_p_poly_small():
    assert p_poly(0).coeffs == (1,)
    # only k = 1 survives: S(1,1) (-m)_1 (1/2)_1
    assert p_poly(1).coeffs == (0, Fraction(-1, 2))


@given(st.fractions(min_value=-5, max_value=5, max_denominator=7), st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_splits(a, j, k):
    assert pochhammer(a, j + k) == pochhammer(a, j) * pochhammer(a + j, k)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=7), st.integers(0, 10))
def test_pochhammer_matches_sympy(a, k):
    assert pochhammer(a, k) == sympy.rf(sympy.Rational(a.numerator, a.denominator), k)


def test_pochhammer_poly_evaluates():
    for k in range(6):
        P = pochhammer_poly(2, -3, k)
        for m in range(-2, 5):
            assert P(m) == pochhammer(2 * m - 3, k)


def test_pochhammer_edge_cases():
    assert pochhammer(5, 0) == 1
    assert pochhammer(-2, 3) == 0
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    with pytest.raises(ValueError):
        pochhammer(1, -1)


@pytest.mark.parametrize("n", range(0, 16))
def test_stirling_two_ways(n):
    for k in range(n + 2):
        assert stirling2(n, k) == stirling2_recurrence(n, k)


def test_stirling_against_sympy():
    from sympy.functions.combinatorial.numbers import stirling

    for n in range(1, 12):
        for k in range(1, n + 1):
            assert stirling2(n, k) == stirling(n, k)
    assert stirling2(10, 4) == 34105
    assert stirling2(0, 0) == 1


@given(st.integers(0, 20))
def test_double_factorial(n):
    if n % 2:
        assert double_factorial(n) == factorial(n + 1) // (2 ** ((n + 1) // 2) * factorial((n + 1) // 2))
    assert double_factorial(n) * double_factorial(n + 1) == factorial(n + 1)
