from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from regroup import PLMap, TableMap, Tail, Window, compose, enumerate_window, invert, negation, translation
from regroup import build_h, build_h_tilde, normalize, positive_part, unique_fixed_point
from regroup.errors import (
    ContinuumOfFixedPointsError,
    FixedPointError,
    GluingError,
    NotAnInvolutionError,
    UnsupportedInvolutionError,
)
from regroup.involution import BackAndForthState, LatticeEnumeration, LazyOrderIsomorphism

from conftest import D, Q, Z, bent_involution, pl


def swapped_reflection():
    table = {x: -x for x in range(-5, 6)}
    table.update({-5: -3, -3: -5, 3: 5, 5: 3})
    return TableMap(table, Tail(-1, 0), Tail(-1, 0))


def test_positive_parts(reflect_about_one):
    assert positive_part(reflect_about_one, Window(-5, 5)) == [2, 3, 4, 5]
    assert positive_part(negation(Q), Window(-1, 1, 2)) == [F(1, 2), 1]
    wd = Window(-1, 1, 2)
    assert positive_part(bent_involution(), wd) == [x for x in enumerate_window(D, wd) if x > 0]


def test_fixed_point_examples(reflect_about_one):
    assert unique_fixed_point(reflect_about_one) == 1
    with pytest.raises(ContinuumOfFixedPointsError):
        unique_fixed_point(PLMap.affine(1, 0, Q))
    with pytest.raises(FixedPointError, match="1/2"):
        unique_fixed_point(PLMap.affine(-1, 1, Z))
    with pytest.raises(NotAnInvolutionError):
        unique_fixed_point(translation(1, Z))


def test_reflection_normal_form(reflect_about_one):
    nf = normalize(reflect_about_one, w=Window(-50, 50))
    T = nf.transported
    assert nf.ok and nf.h_form == "closed" and T.neutral == 1
    xs = range(-50, 51)
    assert all(T.add(x, y) == x + y - 1 for x in xs for y in xs)
    assert all(T.neg(x) == 2 - x for x in xs)
    assert nf.claim6.checked == 101


def test_negation_normal_form_is_native():
    for g, w in ((Z, Window(-10, 10)), (D, Window(-1, 1, 3)), (Q, Window(-1, 1, 3))):
        nf = normalize(negation(g), w=w)
        xs = enumerate_window(g, w)
        assert nf.ok and all(nf.transported.add(x, y) == x + y for x in xs for y in xs)


def test_bent_normal_form():
    nf = normalize(bent_involution(), w=Window(-2, 2, 4))
    assert nf.ok and nf.claim6.checked == 65
    assert nf.cases == {"A": 32, "f(A)": 32, "e": 1}


def test_translation_method_gives_closed_form():
    nf = normalize(bent_involution(), w=Window(-2, 2, 4), method="translation")
    assert nf.ok and isinstance(nf.h_tilde, PLMap)


def test_scattered_lattice_involution_needs_a_table():
    nf = normalize(swapped_reflection(), w=Window(-20, 20))
    assert nf.ok and nf.h_form == "table"


def test_lattice_enumeration_sends_e_to_zero(reflect_about_one):
    h = LatticeEnumeration(reflect_about_one, F(1))
    assert [h(x) for x in (1, 2, 3, 4)] == [0, 1, 2, 3]
    assert h.back(3) == 4


def test_gluing_needs_h_of_e_zero(reflect_about_one):
    with pytest.raises(GluingError):
        build_h_tilde(reflect_about_one, translation(1, Z))


def test_dense_non_pl_involutions_are_unsupported():
    with pytest.raises(UnsupportedInvolutionError):
        build_h(swapped_reflection(), D)


def test_back_and_forth_is_deterministic_and_monotone():
    def grow():
        s = BackAndForthState.start(D, F(0))
        out = []
        for x in (F(1), F(1, 2), F(3), F(3, 4), F(5, 8)):
            s, y = s.forth(x)
            out.append(y)
        return out

    first, second = grow(), grow()
    assert first == second
    assert first[1] < first[4] < first[3] < first[0] < first[2]
    assert first == [1, F(1, 2), 3, F(3, 4), F(5, 8)]


def test_out_of_order_requests_still_give_identity():
    iso = LazyOrderIsomorphism(D, F(0))
    assert [iso(x) for x in (F(15, 8), F(3), F(1, 8))] == [F(15, 8), 3, F(1, 8)]
    assert iso.back(F(37, 16)) == F(37, 16)


def test_lazy_isomorphism_round_trips():
    iso = LazyOrderIsomorphism(D, F(0))
    pts = [x for x in enumerate_window(D, Window(0, 2, 3))]
    iso.seed(pts)
    images = [iso(x) for x in pts]
    assert images == sorted(images) and images[0] == 0
    assert [iso.back(y) for y in images] == pts


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-16, 16).map(lambda n: F(n, 4)), max_size=2), st.integers(-2, 2), st.integers(-4, 4))
def test_conjugated_negation_normalizes(cuts, j, b):
    cuts = sorted(set(cuts))
    slopes = [F(2) ** ((j + i) % 3 - 1) for i in range(len(cuts) + 1)]
    pieces, lo, icpt = [], None, F(b)
    for i, s in enumerate(slopes):
        hi = cuts[i] if i < len(cuts) else None
        pieces.append((lo, hi, s, icpt))
        if hi is not None:
            icpt += (s - slopes[i + 1]) * hi
        lo = hi
    h = pl(D, *pieces)
    f = compose(invert(h), compose(negation(D), h))
    nf = normalize(f, w=Window(-2, 2, 2))
    assert nf.ok and nf.transported.neutral == invert(h)(0)


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(range(-3, 4))))
def test_conjugated_lattice_negation_normalizes(perm):
    s = TableMap(dict(zip(range(-3, 4), perm)), Tail(1, 0), Tail(1, 0))
    f = compose(invert(s), compose(TableMap.affine(-1, 0), s))
    assert normalize(f, w=Window(-12, 12)).ok


@pytest.mark.parametrize("make, w, method", [
    (lambda: PLMap.affine(-1, 2, Z), Window(-15, 15), "back_and_forth"),
    (bent_involution, Window(-2, 2, 3), "translation"),
    (swapped_reflection, Window(-15, 15), "back_and_forth"),
])
def test_normalizing_the_inversion_again_changes_nothing(make, w, method):
    f = make()
    nf = normalize(f, w=w, method=method)
    t = nf.h_tilde
    inversion = compose(invert(t), compose(negation(f.group), t))
    again = normalize(inversion, w=w)
    xs = enumerate_window(f.group, w)
    assert all(again.transported.neg(x) == f(x) == inversion(x) for x in xs)


def test_partition_is_exact_on_windows():
    for f, w in ((swapped_reflection(), Window(-20, 20)), (bent_involution(), Window(-2, 2, 3))):
        e = unique_fixed_point(f)
        A = set(positive_part(f, w))
        for x in enumerate_window(f.group, w):
            kinds = [x > f(x), f(x) > x, x == e]
            assert kinds.count(True) == 1
            assert (x in A) == kinds[0]
