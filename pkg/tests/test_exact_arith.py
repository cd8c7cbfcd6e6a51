from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from iwasawa.errors import NonPrime
from iwasawa.exact_arith import (
    INF,
    PadicClass,
    Place,
    classify_padic,
    format_rational,
    format_valuation,
    is_prime,
    padic_norm,
    padic_valuation,
    parse_rational,
    parse_valuation,
)

PRIMES = st.sampled_from([2, 3, 5, 7, 11, 13, 101])
nonzero = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


@pytest.mark.parametrize(
    "x, p, expected",
    [
        (0, 5, INF),
        (50, 5, 2),  # 50 = 2 * 5**2
        (Fraction(2, 9), 3, -2),  # 2/9 = 2 * 3**-2
        (Fraction(-7, 1), 7, 1),
        (Fraction(1, 1024), 2, -10),
        (3**40, 3, 40),
    ],
)
def test_valuation_examples(x, p, expected):
    assert padic_valuation(x, p) == expected


@pytest.mark.parametrize(
    "x, p, cls",
    [
        (1, 7, PadicClass.UNIT),
        (7, 7, PadicClass.NON_UNIT_INTEGER),
        (Fraction(1, 7), 7, PadicClass.NON_INTEGER),
        (0, 7, PadicClass.NON_UNIT_INTEGER),
        (Fraction(3, 4), 7, PadicClass.UNIT),
    ],
)
def test_classify(x, p, cls):
    assert classify_padic(x, p) == cls


@pytest.mark.parametrize("p", [0, 1, 4, 9, 91, -3, 2**64 + 13])
def test_non_prime_rejected(p):
    with pytest.raises(NonPrime):
        padic_valuation(5, p)
    with pytest.raises(NonPrime):
        classify_padic(5, p)


def test_primality_edges():
    assert is_prime(2) and is_prime(3) and is_prime(2**61 - 1)
    # 2**64 - 59 is the largest prime below 2**64
    assert is_prime(2**64 - 59)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(2**64)


def test_norm_is_exact_power():
    assert padic_norm(Fraction(50), 5) == Fraction(1, 25)
    assert padic_norm(Fraction(2, 9), 3) == 9
    assert padic_norm(0, 3) == 0


@given(nonzero, nonzero, PRIMES)
def test_valuation_multiplicative(x, y, p):
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


@given(st.fractions(max_denominator=10**4), st.fractions(max_denominator=10**4), PRIMES)
def test_ultrametric(x, y, p):
    vx, vy, vs = padic_valuation(x, p), padic_valuation(y, p), padic_valuation(x + y, p)
    assert vs >= min(vx, vy)
    if vx != vy:
        assert vs == min(vx, vy)


@given(st.integers(), st.integers(min_value=1))
def test_canonical_form_idempotent(num, den):
    x = Fraction(num, den)
    again = Fraction(x.numerator, x.denominator)
    assert (again.numerator, again.denominator) == (x.numerator, x.denominator)
    assert x.denominator > 0
    assert parse_rational(format_rational(x)) == x


def test_serialization():
    assert format_rational(Fraction(6, -4)) == "-3/2"
    assert format_rational(Fraction(0)) == "0"
    assert format_valuation(INF) == "inf" and format_valuation(3) == 3
    assert parse_valuation("inf") == INF and parse_valuation(-2) == -2


def test_place():
    assert Place.parse("inf") == Place.real()
    assert not Place.parse("inf").is_finite
    assert Place.parse("5") == Place(5)
    assert str(Place(7)) == "7" and str(Place.real()) == "inf"
    with pytest.raises(NonPrime):
        Place(6)
    with pytest.raises(NonPrime):
        Place.parse("x")
