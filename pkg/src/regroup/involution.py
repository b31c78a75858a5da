"""Normal form of an involution with a single fixed point.

For an involution ``f`` of ``G`` with unique fixed point ``e`` put
``A = {a : a > f(a)}``.  Then ``A``, ``f(A)`` and ``{e}`` partition ``G``.
Pick a homeomorphism ``h`` of ``A + {e}`` onto the non-negative part of
``G`` with ``h(e) = 0`` and glue::

    h~(x) = h(x)         for x in A + {e}
    h~(x) = -h(f(x))     for x in f(A)

``h~`` is a homeomorphism of ``G``, and in the group transported along it
``f`` is the inversion.

How ``h`` is chosen depends on the group:

* lattices: ``e`` is sent to 0 and the points of ``A`` are enumerated in
  increasing order onto ``a, 2a, 3a, ...``;
* dense groups: an order isomorphism ``[e, oo) -> [0, oo)`` grown by
  back-and-forth on demand (`LazyOrderIsomorphism`), or the translation
  ``x -> x - e`` when a closed form is wanted.
"""
from __future__ import annotations

import math
from bisect import bisect_left, insort
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import (
    FixedPointError,
    GluingError,
    MembershipError,
    NotAnInvolutionError,
    PartitionError,
    UnsupportedInvolutionError,
)
from .groups import Cyclic, Window, enumerate_window, simplest_between
from .maps import (
    Homeo,
    Monotonicity,
    Piece,
    PLMap,
    Tail,
    TableMap,
    as_table,
    compose,
    fixed_points,
    is_involution,
    monotonicity,
    negation,
)
from .rationals import as_rational
from .reports import CheckReport, merge
from .transport import TransportedGroup, check_conjugacy

__all__ = [
    "BackAndForthState",
    "InvolutionNormalForm",
    "LatticeEnumeration",
    "LazyOrderIsomorphism",
    "build_h",
    "build_h_tilde",
    "normalize",
    "positive_part",
    "unique_fixed_point",
]


def _in_A(f, x) -> bool:
    return x > f(x)


def positive_part(f: Homeo, w: Window) -> list:
    """Window points of ``A = {a : a > f(a)}``, after checking the partition.

    Every window point must be in exactly one of ``A``, ``f(A)`` and the
    fixed set, and ``f`` must move ``A`` off itself.
    """
    A = []
    fixed = []
    for x in enumerate_window(f.group, w):
        y = f(x)
        if f(y) != x:
            raise PartitionError(f"f(f({x})) = {f(y)}: f is not an involution")
        if x > y:
            A.append(x)
            if _in_A(f, y):
                raise PartitionError(f"{x} and its image {y} both lie in A")
        elif x == y:
            fixed.append(x)
        elif not _in_A(f, y):
            raise PartitionError(f"{x} is in none of A, f(A), {{e}}")
    if len(fixed) > 1:
        raise PartitionError(f"several fixed points in the window: {fixed}")
    return A


def unique_fixed_point(f: Homeo) -> Fraction:
    if not is_involution(f):
        raise NotAnInvolutionError("f o f is not the identity")
    fp = fixed_points(f)
    if len(fp.points) != 1:
        if not fp.points and fp.rejected:
            msg = "no fixed point in the group (candidates " + ", ".join(map(str, fp.rejected)) + " are outside it)"
        elif not fp.points:
            msg = "no fixed point"
        else:
            msg = "several fixed points: " + ", ".join(map(str, fp.points))
        raise FixedPointError(msg, fp.points, fp.rejected)
    return fp.points[0]


# ---------------------------------------------------------------------------
# lattice case


class LatticeEnumeration:
    """``h: A + {e} -> {0, a, 2a, ...}`` for an involution of ``aZ``.

    ``e`` goes to 0 and ``A`` is listed in increasing order.  When ``e`` is
    below all of ``A`` this is the order-preserving enumeration.  Beyond the
    last table point every lattice point is in ``A``, so ``h`` ends in a
    translation and is given in closed form there.
    """

    def __init__(self, f: Homeo, e: Fraction):
        t = as_table(f)
        if t.upper != t.lower or t.upper.direction != -1:
            raise UnsupportedInvolutionError("lattice involution must end in x -> c - x on both sides")
        a = t.group.step
        c = t.upper.offset
        half = c / 2
        lo = half if t.lo is None else min(t.lo, half)
        hi = half if t.hi is None else max(t.hi, half)
        self.lo = a * math.floor(lo / a)
        self.hi = a * math.ceil(hi / a)
        core = [self.lo + a * i for i in range(int((self.hi - self.lo) / a) + 1)]
        self.points = (e,) + tuple(x for x in core if x > t._apply(x))
        self._rank = {x: i for i, x in enumerate(self.points)}
        self.e, self.step, self.reflection = e, a, c
        self.group = t.group
        self.f = t

    @property
    def order_preserving(self) -> bool:
        return all(p < q for p, q in zip(self.points, self.points[1:]))

    @property
    def closed_form(self) -> bool:
        """True when h is the translation ``x -> x - e`` everywhere."""
        return all(self(x) == x - self.e for x in self.points) and self.order_preserving and (
            self.hi + self.step - self.e == self(self.hi + self.step)
        )

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        a = self.step
        if x in self._rank:
            return a * self._rank[x]
        if x > self.hi:
            return a * (len(self.points) - 1) + (x - self.hi)
        raise MembershipError(f"{x} is not in A + {{e}}")

    def back(self, y) -> Fraction:
        y = as_rational(y)
        n = y / self.step
        if y < 0 or n.denominator != 1:
            raise MembershipError(f"{y} is not a non-negative lattice point")
        n = int(n)
        if n < len(self.points):
            return self.points[n]
        return self.hi + self.step * (n - len(self.points) + 1)


def _glue_table(f: Homeo, h) -> TableMap:
    t = as_table(f)
    a = t.group.step
    c = t.upper.offset
    hi = getattr(h, "hi", None)
    if hi is None:
        hi = a * math.ceil(max(c / 2, t.hi if t.hi is not None else c / 2) / a)
    # h must be a translation x -> x + k above hi
    k = h(hi + a) - (hi + a)
    if h(hi + 2 * a) - (hi + 2 * a) != k:
        raise UnsupportedInvolutionError("h does not end in a translation")
    lo = min(getattr(h, "lo", hi), c - hi, t.lo if t.lo is not None else hi)
    table = {}
    x = a * math.floor(lo / a)
    while x <= hi:
        fx = t._apply(x)
        table[x] = h(x) if x >= fx else -h(fx)
        x += a
    upper = Tail(1, k)
    lower = Tail(1, -c - k)
    return TableMap(table, upper, lower, t.group)


# ---------------------------------------------------------------------------
# dense case


def _simplicity(x: Fraction):
    return (x.denominator, abs(x.numerator), x.numerator < 0, x)


@dataclass(frozen=True)
class BackAndForthState:
    """Finite order-isomorphism between ``[e, oo)`` and ``[0, oo)`` in a dense group.

    `pairs` is sorted by source and is strictly increasing in both
    coordinates.  Extending returns a new state.
    """

    group: object
    pairs: tuple

    @classmethod
    def start(cls, group, e) -> "BackAndForthState":
        return cls(group, ((as_rational(e), Fraction(0)),))

    @property
    def e(self):
        return self.pairs[0][0]

    def _match(self, x, side):
        other = 1 - side
        keys = [p[side] for p in self.pairs]
        i = bisect_left(keys, x)
        if i < len(keys) and keys[i] == x:
            return self, self.pairs[i][other], None
        if i == 0:
            raise MembershipError(f"{x} is below the matched minimum {keys[0]}")
        # match the simplest point of the gap first, so that x is only
        # ever paired once it is itself the simplest unmatched point there
        gap_hi = keys[i] if i < len(keys) else None
        s = simplest_between(self.group, keys[i - 1], gap_hi)
        lo = self.pairs[i - 1][other]
        hi = self.pairs[i][other] if i < len(keys) else None
        y = simplest_between(self.group, lo, hi)
        pair = (s, y) if side == 0 else (y, s)
        pairs = list(self.pairs)
        insort(pairs, pair)
        state = BackAndForthState(self.group, tuple(pairs))
        return state, y, s

    def _extend(self, x, side):
        state = self
        while True:
            state, y, added = state._match(x, side)
            if added is None or added == x:
                return state, y

    def forth(self, x):
        """Image of a source point, adding it if new: ``(state, y)``."""
        return self._extend(as_rational(x), 0)

    def back(self, y):
        """Preimage of a target point, adding it if new: ``(state, x)``."""
        return self._extend(as_rational(y), 1)


class LazyOrderIsomorphism:
    """Callable view of a growing `BackAndForthState`.

    New points are matched with the simplest admissible partner (smallest
    denominator, then smallest absolute numerator), so results depend only
    on the order in which points are requested.
    """

    def __init__(self, group, e):
        self.state = BackAndForthState.start(group, e)
        self.group = group

    @property
    def e(self):
        return self.state.e

    def __call__(self, x) -> Fraction:
        self.state, y = self.state.forth(x)
        return y

    def back(self, y) -> Fraction:
        self.state, x = self.state.back(y)
        return x

    def seed(self, points):
        """Request `points` in order of simplicity, which keeps matches canonical."""
        for x in sorted(points, key=_simplicity):
            self(x)
        return self


class GluedMap(Homeo):
    """``h~``: `h` on ``A + {e}``, ``-h o f`` on ``f(A)``."""

    def __init__(self, f: Homeo, h, e):
        self.f, self.h, self.e = f, h, e
        self.group = f.group

    def _apply(self, x):
        fx = self.f(x)
        return self.h(x) if x >= fx else -self.h(fx)

    def inverse(self):
        return _GluedInverse(self)


class _GluedInverse(Homeo):
    def __init__(self, glued: GluedMap):
        self.glued = glued
        self.group = glued.group

    def _apply(self, y):
        g = self.glued
        if y >= 0:
            return g.h.back(y)
        return g.f(g.h.back(-y))

    def inverse(self):
        return self.glued


def _glue_pl(f: PLMap, h: PLMap, e) -> PLMap:
    lower = compose(negation(f.group), compose(h, f))
    pieces = []
    for p in lower.pieces:
        if p.lo is not None and p.lo >= e:
            break
        hi = e if p.hi is None or p.hi > e else p.hi
        pieces.append(Piece(p.lo, hi, p.slope, p.intercept))
    for p in h.pieces:
        if p.hi is not None and p.hi <= e:
            continue
        lo = e if p.lo is None or p.lo < e else p.lo
        pieces.append(Piece(lo, p.hi, p.slope, p.intercept))
    return PLMap(pieces, f.group)


# ---------------------------------------------------------------------------


def build_h(f: Homeo, g=None, method: str = "back_and_forth"):
    """Homeomorphism of ``A + {e}`` onto the non-negative part of the group.

    On lattices the enumeration `LatticeEnumeration` is always used.  On
    dense groups `method` selects a `LazyOrderIsomorphism`
    (``"back_and_forth"``) or the closed-form translation ``x -> x - e``
    (``"translation"``); both need ``A`` to be the part above ``e``, which
    holds exactly when `f` reverses order.
    """
    g = f.group if g is None else g
    e = unique_fixed_point(f)
    if isinstance(g, Cyclic):
        return LatticeEnumeration(f, e)
    if not isinstance(f, PLMap) or monotonicity(f) is not Monotonicity.STRICTLY_DECREASING:
        raise UnsupportedInvolutionError(
            "dense case needs an order-reversing involution (A must lie above the fixed point)"
        )
    if method == "translation":
        return PLMap.affine(1, -e, g)
    if method == "back_and_forth":
        return LazyOrderIsomorphism(g, e)
    raise ValueError(f"unknown method {method!r}")


def build_h_tilde(f: Homeo, h) -> Homeo:
    """Glue `h` and ``-h o f`` into a homeomorphism of the whole group."""
    e = unique_fixed_point(f)
    if h(e) != 0:
        raise GluingError(f"h(e) = {h(e)}, but the two halves only meet at 0")
    if isinstance(f.group, Cyclic):
        return _glue_table(f, h)
    if isinstance(h, PLMap) and isinstance(f, PLMap):
        return _glue_pl(f, h, e)
    return GluedMap(f, h, e)


@dataclass
class InvolutionNormalForm:
    f: Homeo
    e: Fraction
    h: object
    h_tilde: Homeo
    transported: TransportedGroup
    window: Window
    A_window: list
    claim6: CheckReport
    conjugacy: CheckReport
    cases: dict = field(default_factory=dict)

    def in_A(self, x) -> bool:
        return _in_A(self.f, as_rational(x))

    @property
    def h_form(self) -> str:
        t = self.h_tilde
        if isinstance(t, PLMap) or (isinstance(t, TableMap) and t.is_affine):
            return "closed"
        return "table"

    @property
    def ok(self) -> bool:
        return self.claim6.ok and self.conjugacy.ok

    def to_json(self, sample: int = 8):
        return {
            "fixed_point": str(self.e),
            "A_sample": [str(a) for a in self.A_window[:sample]],
            "A_window_size": len(self.A_window),
            "h_form": self.h_form,
            "claim6": self.claim6.status,
            "claim6_cases": self.cases,
            "conjugacy": self.conjugacy.to_json(),
            "transported_neutral": str(self.transported.neutral),
            "window": self.window.to_json(),
        }


def normalize(f: Homeo, g=None, w: Optional[Window] = None, method: str = "back_and_forth") -> InvolutionNormalForm:
    """Regroup `g` so that the involution `f` becomes its inversion.

    Every window point is checked: the transported inverse of ``x`` must be
    ``f(x)``, for ``x`` in ``A``, in ``f(A)`` and at ``e``.
    """
    g = f.group if g is None else g
    if w is None:
        raise ValueError("a window is required")
    e = unique_fixed_point(f)
    A = positive_part(f, w)
    h = build_h(f, g, method)
    if isinstance(h, LazyOrderIsomorphism):
        h.seed([e] + A)
    h_tilde = build_h_tilde(f, h)
    T = TransportedGroup(g, h_tilde)
    claim6 = CheckReport("claim6", details={"window": w.to_json()})
    cases = {"A": 0, "f(A)": 0, "e": 0}
    for x in enumerate_window(g, w):
        fx = f(x)
        case = "e" if x == fx else ("A" if x > fx else "f(A)")
        cases[case] += 1
        claim6.checked += 1
        if T.neg(x) != fx:
            claim6.fail(x=x, case=case, expected=fx, got=T.neg(x))
            break
    if T.neutral != e:
        claim6.fail(neutral=T.neutral, expected=e)
    claim6.details["cases"] = dict(cases)
    conj = check_conjugacy(h_tilde, f, negation(g), w)
    return InvolutionNormalForm(f, e, h, h_tilde, T, w, A, claim6, conj, cases)
