from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from regroup import PLMap, TableMap, Tail, TransportedGroup, Window, check_conjugacy, identity, negation, translation
from regroup import enumerate_window, equivalence_suite, normalize, round_trip, verify_axioms, verify_isomorphism
from regroup.errors import GroupMismatchError, NeutralShiftError, NotABijectionError
from regroup.transport import ConjugacyWitness, verify_inversion_law, verify_shift_law

from conftest import D, Z, dyadics

PRED = PLMap.affine(1, -1, Z)
W10 = Window(-10, 10)


def test_identity_transport_is_native():
    T = TransportedGroup(Z, identity(Z))
    assert T.add(3, 4) == 7 and T.neg(5) == -5


def test_predecessor_transport_against_brute_force_table():
    T = TransportedGroup(Z, PRED)
    xs = enumerate_window(Z, W10)
    # the sum is the unique z with z - 1 == (x - 1) + (y - 1)
    table = {(x, y): next(z for z in range(-40, 41) if z - 1 == (x - 1) + (y - 1)) for x in xs for y in xs}
    assert T.add(3, 4) == 6
    assert all(T.add(x, y) == z for (x, y), z in table.items())


def test_transported_inverse_and_neutral():
    T = TransportedGroup(Z, PRED)
    assert T.neutral == 1
    assert T.neg(5) == -3 and T.add(5, -3) == 1


def test_negation_is_an_automorphism():
    T = TransportedGroup(Z, negation(Z))
    assert all(T.add(x, y) == x + y for x in range(-5, 6) for y in range(-5, 6))


def test_doubling_commutes_with_negation():
    T = TransportedGroup(D, PLMap.affine(2, 0, D))
    assert all(T.neg(x) == -x for x in enumerate_window(D, Window(-2, 2, 3)))


@pytest.mark.parametrize(
    "h, expected",
    [
        (identity(Z), lambda x: x + 1),
        (PRED, lambda x: x + 1),
        (negation(Z), lambda x: x - 1),
    ],
)
def test_transported_shift_by_one(h, expected):
    s = TransportedGroup(Z, h).shift_map(1)
    assert all(s(x) == expected(x) for x in range(-10, 11))
    assert verify_shift_law(TransportedGroup(Z, h), 1, W10).ok


def test_isomorphism_counts_all_pairs():
    rep = verify_isomorphism(TransportedGroup(Z, PRED), Window(-20, 20))
    assert rep.ok and rep.details["pairs"] == 41**2


def test_corrupted_transport_map_never_reaches_verification():
    with pytest.raises(NotABijectionError):
        TableMap({0: 1, 1: 1}, Tail(1, 0), Tail(1, 0))


def test_conjugacy_examples(reflect_about_one):
    f = translation(1, Z)
    assert check_conjugacy(identity(Z), f, f, W10).ok
    # points are scanned in increasing order, so the left end is reported
    rep = check_conjugacy(identity(Z), f, translation(2, Z), Window(0, 10))
    assert not rep.ok and rep.counterexample == {"x": 0, "lhs": 1, "rhs": 2}
    nf = normalize(reflect_about_one, w=W10)
    assert check_conjugacy(nf.h_tilde, reflect_about_one, negation(Z), W10).ok
    assert all(nf.h_tilde(x) == x - 1 for x in range(-10, 11))


def test_conjugacy_requires_one_group():
    with pytest.raises(GroupMismatchError):
        check_conjugacy(identity(Z), identity(D), identity(D), W10)


def test_witness_object():
    w = ConjugacyWitness(identity(Z), translation(1, Z), translation(1, Z))
    assert w.verify(W10).ok


@pytest.mark.parametrize("direction", ["regroup_to_conjugacy", "conjugacy_to_regroup"])
def test_inversion_equivalence_both_ways(direction, reflect_about_one):
    h = PLMap.affine(1, -1, Z)
    res = equivalence_suite(Z, reflect_about_one, direction, W10, witness=h)
    assert res.ok and res.transported.neutral == 1


def test_shift_equivalence_reports_constants():
    wd = Window(-4, 4, 3)
    res = equivalence_suite(D, translation(2, D), "conjugacy_to_regroup", wd, witness=identity(D), role="shift")
    assert res.ok and res.native_constant == 2 and res.transported_constant == 2


def test_neutral_shift_is_refused():
    with pytest.raises(NeutralShiftError):
        equivalence_suite(Z, identity(Z), "regroup_to_conjugacy", W10, witness=PRED, role="shift")


def test_small_axiom_window():
    assert verify_axioms(TransportedGroup(D, PLMap.affine(2, 0, D)), Window(-1, 1, 2)).ok
    assert verify_inversion_law(TransportedGroup(Z, PRED), W10).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(-3, 3).map(lambda j: F(2) ** j), dyadics, st.sampled_from(["inversion", "shift"]))
def test_round_trip_on_affine_dyadic_maps(a, b, role):
    h = PLMap.affine(a, b, D)
    T = TransportedGroup(D, h)
    f = T.shift_map(1) if role == "shift" else compose_inversion(T)
    assert round_trip(D, f, h, Window(-1, 1, 2), role=role).ok


def compose_inversion(T):
    from regroup import compose, invert

    return compose(invert(T.h), compose(negation(T.base), T.h))
