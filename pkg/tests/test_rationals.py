from fractions import Fraction as F

import pytest
from hypothesis import given

from regroup.errors import ParseError
from regroup.rationals import (
    INFINITY,
    Ordering,
    add,
    as_rational,
    cmp,
    dyadic_valuation,
    format_rational,
    mul,
    neg,
    parse_rational,
)

from conftest import rationals


def test_worked_sums():
    assert add(F(1, 2), F(1, 3)) == F(5, 6)
    assert add(F(1, 3), F(-1, 3)) == 0
    assert neg(F(3, 4)) == F(-3, 4)


def test_valuation_examples():
    assert dyadic_valuation(12, 2) == 2
    assert dyadic_valuation(0, 2) is INFINITY
    assert dyadic_valuation(-40, 2) == 3
    assert dyadic_valuation(18, 3) == 2


@pytest.mark.parametrize("bad", [F(1, 2), 2.0])
def test_valuation_rejects_non_integers(bad):
    with pytest.raises((ValueError, TypeError)):
        dyadic_valuation(bad, 2)


def test_parse_and_format():
    assert parse_rational("-6/4") == F(-3, 2)
    assert parse_rational("7") == 7
    assert format_rational(F(-3, 2)) == "-3/2"
    for bad in ["1/0", "abc", "1.5", ""]:
        with pytest.raises(Exception):
            parse_rational(bad)


def test_floats_are_refused():
    with pytest.raises(ParseError):
        as_rational(0.5)
    with pytest.raises(ParseError):
        as_rational(True)


def test_infinity_orders_above_everything():
    assert INFINITY > 10**100
    assert cmp(1, 2) is Ordering.LT and cmp(2, 2) is Ordering.EQ


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)
    assert add(a, neg(a)) == 0
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@given(rationals)
def test_format_round_trip(a):
    assert parse_rational(format_rational(a)) == a
