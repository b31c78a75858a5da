from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from regroup import Cyclic, FullRationals, GroupElement, MAdic, Window, contains, enumerate_window
from regroup.errors import MembershipError, WindowError
from regroup.groups import group_from_json, native_add, native_neg, neutral, simplest_between, window_from_json

from conftest import D, Q, Z, dyadics


def test_membership_examples():
    assert contains(MAdic(2), F(3, 4))
    assert not contains(MAdic(2), F(1, 3))
    assert contains(Cyclic(F(1, 2)), F(5, 2))
    assert not contains(Cyclic(F(1, 2)), F(1, 3))
    assert contains(MAdic(6), F(1, 12))
    assert contains(FullRationals(), F(7, 13))


def test_enumeration_examples():
    assert enumerate_window(Z, Window(-2, 2)) == [-2, -1, 0, 1, 2]
    dy = enumerate_window(D, Window(0, 1, 3))
    assert dy == [F(n, 8) for n in range(9)]


def test_rationals_window_against_brute_force():
    got = enumerate_window(Q, Window(0, 1, 3))
    oracle = sorted({F(p, q) for q in range(1, 4) for p in range(0, q + 1)})
    assert got == oracle == [0, F(1, 3), F(1, 2), F(2, 3), 1]


def test_dense_window_needs_resolution():
    with pytest.raises(WindowError):
        enumerate_window(D, Window(0, 1))


def test_native_operations():
    half, quarter = GroupElement(F(1, 2), D), GroupElement(F(1, 4), D)
    assert native_add(half, quarter).value == F(3, 4)
    assert native_neg(GroupElement(5, Z)).value == -5
    for g in (Z, D, Q):
        assert neutral(g).value == 0


def test_element_membership_enforced():
    with pytest.raises(MembershipError):
        GroupElement(F(1, 3), D)


def test_json_round_trip():
    for g in (Z, Cyclic(F(1, 2)), D, MAdic(3), Q):
        assert group_from_json(g.to_json()) == g
    w = window_from_json({"lo": "-4", "hi": "4", "denom_exp": 3})
    assert (w.lo, w.hi, w.denom_bound) == (-4, 4, 3)


def test_simplest_between_prefers_small_denominators():
    assert simplest_between(Q, F(1, 4), F(3, 4)) == F(1, 2)
    assert simplest_between(D, 0, 1) == F(1, 2)
    assert simplest_between(Q, F(1, 4), F(2, 5)) == F(1, 3)
    assert simplest_between(D, F(1, 4), F(2, 5)) == F(3, 8)


@given(dyadics, dyadics)
def test_dyadics_closed_under_addition(a, b):
    assert contains(D, a + b) and contains(D, -a)


@given(st.integers(-30, 30), st.integers(0, 4))
def test_window_sizes(r, k):
    lo, hi = F(-abs(r)), F(abs(r))
    assert len(enumerate_window(D, Window(lo, hi, k))) == 2 * abs(r) * 2**k + 1
