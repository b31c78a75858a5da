"""Group structures transported along homeomorphisms.

Given a bijection ``h: G -> G`` the operation ``x (+)h y = h^-1(h(x) + h(y))``
makes ``h`` an isomorphism from ``<G, (+)h>`` onto the native group.  When
``h`` is a homeomorphism the new group is topologically isomorphic to the
old one, so a map is conjugate to the native inversion (or to a non-neutral
shift) exactly when it *is* the inversion (a shift) of some transported
structure.  This module computes the transported operations lazily through
``h`` and checks the laws exhaustively on windows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import GroupMismatchError, NeutralShiftError, PreconditionError
from .groups import GroupElement, Window, enumerate_window
from .maps import Homeo, compose, negation, translation
from .rationals import as_rational
from .reports import CheckReport, merge

__all__ = [
    "ConjugacyWitness",
    "EquivalenceResult",
    "TransportedGroup",
    "check_conjugacy",
    "equivalence_suite",
    "round_trip",
    "transported_add",
    "transported_neg",
    "transported_shift",
    "verify_axioms",
    "verify_inversion_law",
    "verify_isomorphism",
    "verify_shift_law",
]


def _value(x) -> Fraction:
    return x.value if isinstance(x, GroupElement) else as_rational(x)


class TransportedGroup:
    """``<G, (+)h>`` for a homeomorphism `h` of the base group.

    Images under ``h`` and ``h^-1`` are memoised, which keeps exhaustive
    window checks cheap; the maps themselves are never tabulated.
    """

    def __init__(self, base, h: Homeo):
        if h.group != base:
            raise GroupMismatchError(f"transporting map lives on {h.group}, not {base}")
        self.base = base
        self.h = h
        self.h_inv = h.inverse()
        self._fwd: dict = {}
        self._back: dict = {}
        self.neutral = self.from_native(0)

    def to_native(self, x) -> Fraction:
        x = _value(x)
        try:
            return self._fwd[x]
        except KeyError:
            y = self._fwd[x] = self.h(x)
            self._back.setdefault(y, x)
            return y

    def from_native(self, y) -> Fraction:
        y = _value(y)
        try:
            return self._back[y]
        except KeyError:
            x = self._back[y] = self.h_inv(y)
            self._fwd.setdefault(x, y)
            return x

    def add(self, x, y) -> Fraction:
        try:
            return self._back[self._fwd[x] + self._fwd[y]]
        except (KeyError, TypeError):
            return self.from_native(self.to_native(x) + self.to_native(y))

    def neg(self, x) -> Fraction:
        return self.from_native(-self.to_native(x))

    def shift_map(self, c_native) -> Homeo:
        """``h^-1 o (+c) o h``, i.e. ``x -> x (+) h^-1(c)``."""
        c = as_rational(c_native)
        return compose(self.h_inv, compose(translation(c, self.base), self.h))

    def __repr__(self):
        return f"TransportedGroup({self.base}, neutral={self.neutral})"


def transported_add(T: TransportedGroup, x, y) -> Fraction:
    return T.add(x, y)


def transported_neg(T: TransportedGroup, x) -> Fraction:
    return T.neg(x)


def transported_shift(T: TransportedGroup, c_native) -> Homeo:
    return T.shift_map(c_native)


def verify_isomorphism(T: TransportedGroup, w: Window) -> CheckReport:
    """``h(x (+) y) = h(x) + h(y)`` on all window pairs, ``h(-x) = -h(x)`` on all points."""
    xs = enumerate_window(T.base, w)
    rep = CheckReport("isomorphism", details={"window": w.to_json(), "pairs": len(xs) ** 2})
    hx = {x: T.to_native(x) for x in xs}
    for x in xs:
        for y in xs:
            z = T.add(x, y)
            rep.checked += 1
            if not T.base.contains(z) or T.h(z) != hx[x] + hx[y]:
                return rep.fail(x=x, y=y, sum=z)
    for x in xs:
        rep.checked += 1
        if T.h(T.neg(x)) != -hx[x]:
            return rep.fail(x=x, neg=T.neg(x))
    return rep


def verify_axioms(T: TransportedGroup, w: Window) -> CheckReport:
    """Closure, associativity, neutral element and inverses of ``(+)h`` on a window."""
    xs = enumerate_window(T.base, w)
    e = T.neutral
    rep = CheckReport("axioms", details={"window": w.to_json(), "elements": len(xs), "neutral": e})
    table = {}
    for x in xs:
        for y in xs:
            z = table[x, y] = T.add(x, y)
            rep.checked += 1
            if not T.base.contains(z):
                return rep.fail(law="closure", x=x, y=y, sum=z)
    for x in xs:
        rep.checked += 1
        if T.add(x, e) != x or T.add(e, x) != x:
            return rep.fail(law="neutral", x=x)
        rep.checked += 1
        if T.add(x, T.neg(x)) != e:
            return rep.fail(law="inverse", x=x)
    # (x+y)+z == x+(y+z), computed as h^-1(h(x+y) + h(z)) vs h^-1(h(x) + h(y+z))
    native = {x: T.to_native(x) for x in xs}
    native_sum = {k: T.to_native(v) for k, v in table.items()}
    memo = T._back

    def back(v):
        try:
            return memo[v]
        except KeyError:
            return T.from_native(v)

    hs = [native[z] for z in xs]
    for x in xs:
        hx = native[x]
        for y in xs:
            hxy = native_sum[x, y]
            for z, hz in zip(xs, hs):
                if back(hxy + hz) != back(hx + native_sum[y, z]):
                    rep.checked += 1
                    return rep.fail(law="associativity", x=x, y=y, z=z)
        rep.checked += len(xs) ** 2
    return rep


def verify_inversion_law(T: TransportedGroup, w: Window) -> CheckReport:
    """``h`` conjugates the transported inversion to the native one."""
    rep = CheckReport("inversion", details={"window": w.to_json()})
    for x in enumerate_window(T.base, w):
        rep.checked += 1
        if T.h(T.neg(x)) != -T.h(x):
            return rep.fail(x=x)
    return rep


def verify_shift_law(T: TransportedGroup, c_native, w: Window) -> CheckReport:
    """The transported shift ``s`` satisfies ``h(s(x)) = h(x) + c``."""
    c = as_rational(c_native)
    s = T.shift_map(c)
    rep = CheckReport("shift", details={"window": w.to_json(), "c": c, "d": T.from_native(c)})
    for x in enumerate_window(T.base, w):
        rep.checked += 1
        if T.h(s(x)) != T.h(x) + c:
            return rep.fail(x=x, image=s(x))
    return rep


def check_conjugacy(t: Homeo, f: Homeo, g: Homeo, w: Window) -> CheckReport:
    """Check ``t(f(x)) == g(t(x))`` for every window point."""
    if not (t.group == f.group == g.group):
        raise GroupMismatchError("conjugacy check needs all three maps on one group")
    rep = CheckReport("conjugacy", details={"window": w.to_json()})
    for x in enumerate_window(t.group, w):
        rep.checked += 1
        lhs, rhs = t(f(x)), g(t(x))
        if lhs != rhs:
            return rep.fail(x=x, lhs=lhs, rhs=rhs)
    return rep


@dataclass(frozen=True)
class ConjugacyWitness:
    """The claim ``t o lhs = rhs o t``."""

    t: Homeo
    lhs: Homeo
    rhs: Homeo

    def verify(self, w: Window) -> CheckReport:
        return check_conjugacy(self.t, self.lhs, self.rhs, w)


@dataclass
class EquivalenceResult:
    report: CheckReport
    witness: Optional[ConjugacyWitness] = None
    transported: Optional[TransportedGroup] = None
    # shift constants: native c and transported d = h^-1(c)
    native_constant: Optional[Fraction] = None
    transported_constant: Optional[Fraction] = None

    @property
    def ok(self):
        return self.report.ok


def _pointwise(name, xs, f, g, w):
    rep = CheckReport(name, details={"window": w.to_json()})
    for x in xs:
        rep.checked += 1
        if f(x) != g(x):
            return rep.fail(x=x, expected=g(x), got=f(x))
    return rep


def equivalence_suite(
    group,
    f: Homeo,
    direction: str,
    w: Window,
    *,
    witness: Homeo,
    role: str = "inversion",
) -> EquivalenceResult:
    """Turn one side of the regrouping/conjugacy equivalence into the other.

    ``regroup_to_conjugacy``: `f` is the inversion (or a shift) of the group
    transported along `witness`; the transporting map itself is returned as
    a conjugacy to the native inversion (or native shift).

    ``conjugacy_to_regroup``: `witness` conjugates `f` to the native
    inversion (or to a native shift); the group transported along it is
    returned, with `f` as its inversion (or as a shift).
    """
    if role not in ("inversion", "shift"):
        raise ValueError(f"role must be 'inversion' or 'shift', got {role!r}")
    if direction not in ("regroup_to_conjugacy", "conjugacy_to_regroup"):
        raise ValueError(f"unknown direction {direction!r}")
    if f.group != group or witness.group != group:
        raise GroupMismatchError("f, witness and group must agree")
    T = TransportedGroup(group, witness)
    xs = enumerate_window(group, w)
    name = f"{direction}:{role}"

    if role == "inversion":
        native = negation(group)
        if direction == "regroup_to_conjugacy":
            given = _pointwise("f_is_transported_inversion", xs, f, T.neg, w)
            wit = ConjugacyWitness(witness, f, native)
            report = merge(name, [given, wit.verify(w)])
            return EquivalenceResult(report, witness=wit, transported=T)
        wit = ConjugacyWitness(witness, f, native)
        given = wit.verify(w)
        built = _pointwise("f_is_transported_inversion", xs, f, T.neg, w)
        return EquivalenceResult(merge(name, [given, built]), witness=wit, transported=T)

    if direction == "regroup_to_conjugacy":
        d = f(T.neutral)
        if d == T.neutral:
            raise NeutralShiftError("f fixes the neutral element: it is the neutral shift")
        c = T.to_native(d)
        given = _pointwise("f_is_transported_shift", xs, f, lambda x: T.add(x, d), w)
        wit = ConjugacyWitness(witness, f, translation(c, group))
        report = merge(name, [given, wit.verify(w)])
        return EquivalenceResult(report, wit, T, native_constant=c, transported_constant=d)
    c = witness(f(T.neutral))
    if c == 0:
        raise NeutralShiftError("the conjugated native shift is the identity")
    wit = ConjugacyWitness(witness, f, translation(c, group))
    given = wit.verify(w)
    d = T.from_native(c)
    built = _pointwise("f_is_transported_shift", xs, f, lambda x: T.add(x, d), w)
    shift = verify_shift_law(T, c, w)
    report = merge(name, [given, built, shift])
    return EquivalenceResult(report, wit, T, native_constant=c, transported_constant=d)


def round_trip(group, f: Homeo, h: Homeo, w: Window, role: str = "inversion") -> CheckReport:
    """regroup -> conjugacy -> regroup, comparing the two operations on the window."""
    first = equivalence_suite(group, f, "regroup_to_conjugacy", w, witness=h, role=role)
    if first.witness is None:
        raise PreconditionError("no witness produced")
    second = equivalence_suite(group, f, "conjugacy_to_regroup", w, witness=first.witness.t, role=role)
    T1, T2 = first.transported, second.transported
    xs = enumerate_window(group, w)
    same = CheckReport("same_operation", details={"window": w.to_json()})
    for x in xs:
        for y in xs:
            same.checked += 1
            if T1.add(x, y) != T2.add(x, y):
                same.fail(x=x, y=y)
                break
        if not same.ok:
            break
    return merge(f"round_trip:{role}", [first.report, second.report, same])
