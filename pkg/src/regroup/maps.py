"""Exact homeomorphisms of the supported groups.

Two finite forms carry all symbolic operations:

* `PLMap` -- a strictly monotone, continuous, piecewise-linear map of the
  real line whose restriction to the group is a bijection of the group.
  Closure (``f(G) = G``) is enforced when the map is built.
* `TableMap` -- a bijection of a lattice ``aZ`` given by a finite table on a
  contiguous block plus affine tails ``x -> +-x + c`` beyond the block.

Other `Homeo` subclasses (composites, lazily grown maps, the successor maps
of the orbit module) support evaluation and inversion only.
"""
from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import (
    ClosureError,
    ContinuumOfFixedPointsError,
    GroupMismatchError,
    MapConstructionError,
    MembershipError,
    NotABijectionError,
    ParseError,
    UnsupportedMapError,
)
from .groups import Cyclic, GroupElement, MAdic, group_from_json
from .rationals import as_rational, format_rational

__all__ = [
    "Composite",
    "FixedPoints",
    "Homeo",
    "Monotonicity",
    "PLMap",
    "Piece",
    "TableMap",
    "Tail",
    "as_table",
    "compose",
    "evaluate",
    "fixed_points",
    "identity",
    "invert",
    "is_involution",
    "map_from_json",
    "map_to_json",
    "monotonicity",
    "negation",
    "translation",
]


class Monotonicity(enum.Enum):
    STRICTLY_INCREASING = "StrictlyIncreasing"
    STRICTLY_DECREASING = "StrictlyDecreasing"
    NON_MONOTONE = "NonMonotone"


class FixedPoints(NamedTuple):
    points: tuple
    complete: bool
    # candidate solutions that fell outside the group
    rejected: tuple = ()


class Homeo:
    """A bijection of ``self.group`` onto itself.

    Subclasses implement `_apply` on exact rationals and `inverse`.
    Calling a map checks membership on the way in and out.
    """

    group = None

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        if not self.group.contains(x):
            raise MembershipError(f"{x} is not an element of {self.group}")
        y = self._apply(x)
        if not self.group.contains(y):
            raise MembershipError(f"map produced {y}, outside {self.group}")
        return y

    def _apply(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def inverse(self) -> "Homeo":
        raise NotImplementedError


def evaluate(f: Homeo, x):
    """Apply `f`; a `GroupElement` argument gives a `GroupElement` back."""
    if isinstance(x, GroupElement):
        if x.group != f.group:
            raise GroupMismatchError(f"{x.group} vs {f.group}")
        return GroupElement(f(x.value), f.group)
    return f(x)


# ---------------------------------------------------------------------------
# piecewise-linear maps


@dataclass(frozen=True)
class Piece:
    """``x -> slope * x + intercept`` on ``[lo, hi]``; `None` is an infinite end."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        for name in ("lo", "hi"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, as_rational(v))
        object.__setattr__(self, "slope", as_rational(self.slope))
        object.__setattr__(self, "intercept", as_rational(self.intercept))

    def at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    def to_json(self):
        return {
            "lo": "-inf" if self.lo is None else format_rational(self.lo),
            "hi": "inf" if self.hi is None else format_rational(self.hi),
            "slope": format_rational(self.slope),
            "intercept": format_rational(self.intercept),
        }


def _check_closure(group, piece: Piece):
    s, b = piece.slope, piece.intercept
    if isinstance(group, MAdic):
        m = group.base
        mag = abs(s)
        if not (
            (mag.numerator == 1 and _power_of(mag.denominator, m))
            or (mag.denominator == 1 and _power_of(mag.numerator, m))
        ):
            raise ClosureError(f"slope {s} is not +-{m}^j, so {group} is not preserved")
        for v in (b, piece.lo, piece.hi):
            if v is not None and not group.contains(v):
                raise ClosureError(f"{v} is not in {group}")
    elif isinstance(group, Cyclic):
        if abs(s) != 1:
            raise ClosureError(f"slope {s} does not preserve the lattice {group}")
        if not group.contains(b):
            raise ClosureError(f"intercept {b} is not in {group}")


def _power_of(n: int, m: int) -> bool:
    while n % m == 0:
        n //= m
    return n == 1


class PLMap(Homeo):
    """Strictly monotone continuous piecewise-linear homeomorphism.

    Pieces must cover the line in order, abut exactly and agree at shared
    breakpoints.  Adjacent pieces with the same affine formula are merged,
    so two maps are equal iff they are equal as functions.
    """

    __slots__ = ("pieces", "group", "_breaks")

    def __init__(self, pieces, group):
        pieces = [p if isinstance(p, Piece) else Piece(*p) for p in pieces]
        if not pieces:
            raise MapConstructionError("a PL map needs at least one piece")
        if pieces[0].lo is not None or pieces[-1].hi is not None:
            raise MapConstructionError("pieces must extend to -inf and +inf")
        for p, q in zip(pieces, pieces[1:]):
            if p.hi is None or q.lo is None or p.hi != q.lo:
                raise MapConstructionError(f"pieces do not abut: {p.hi} vs {q.lo}")
            if p.at(p.hi) != q.at(q.lo):
                raise MapConstructionError(f"discontinuity at {p.hi}")
        for p in pieces:
            if p.lo is not None and p.hi is not None and p.lo >= p.hi:
                raise MapConstructionError(f"degenerate piece [{p.lo}, {p.hi}]")
            if p.slope == 0:
                raise MapConstructionError("zero slope")
        if len({p.slope > 0 for p in pieces}) != 1:
            raise MapConstructionError("slopes change sign: map is not monotone")
        for p in pieces:
            _check_closure(group, p)

        merged = [pieces[0]]
        for p in pieces[1:]:
            last = merged[-1]
            if (last.slope, last.intercept) == (p.slope, p.intercept):
                merged[-1] = Piece(last.lo, p.hi, p.slope, p.intercept)
            else:
                merged.append(p)
        self.pieces = tuple(merged)
        self.group = group
        self._breaks = [p.hi for p in self.pieces[:-1]]

    @classmethod
    def affine(cls, slope, intercept, group):
        return cls([Piece(None, None, slope, intercept)], group)

    @property
    def breakpoints(self):
        return tuple(self._breaks)

    @property
    def increasing(self) -> bool:
        return self.pieces[0].slope > 0

    def piece_at(self, x: Fraction) -> Piece:
        return self.pieces[bisect_left(self._breaks, x)]

    def _apply(self, x):
        return self.piece_at(x).at(x)

    def inverse(self) -> "PLMap":
        out = []
        for p in self.pieces:
            s, b = p.slope, p.intercept
            ends = [None if v is None else p.at(v) for v in (p.lo, p.hi)]
            lo, hi = ends if s > 0 else ends[::-1]
            out.append(Piece(lo, hi, 1 / s, -b / s))
        if not self.increasing:
            out.reverse()
        return PLMap(out, self.group)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.group == other.group and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.group, self.pieces))

    def __repr__(self):
        body = "; ".join(
            f"{p.slope}x{'-' if p.intercept < 0 else '+'}{abs(p.intercept)} on [{'-inf' if p.lo is None else p.lo}, "
            f"{'inf' if p.hi is None else p.hi}]"
            for p in self.pieces
        )
        return f"PLMap({body} | {self.group})"


def _pl_compose(f: PLMap, g: PLMap) -> PLMap:
    # breakpoints of f o g: those of g plus preimages under g of those of f
    ginv = g.inverse()
    cuts = sorted(set(g.breakpoints) | {ginv._apply(b) for b in f.breakpoints})
    if not cuts:
        samples = [Fraction(0)]
    else:
        samples = [cuts[0] - 1]
        samples += [(a + b) / 2 for a, b in zip(cuts, cuts[1:])]
        samples.append(cuts[-1] + 1)
    bounds = [None] + cuts + [None]
    pieces = []
    for i, x in enumerate(samples):
        pg = g.piece_at(x)
        pf = f.piece_at(pg.at(x))
        pieces.append(
            Piece(bounds[i], bounds[i + 1], pf.slope * pg.slope, pf.slope * pg.intercept + pf.intercept)
        )
    return PLMap(pieces, f.group)


# ---------------------------------------------------------------------------
# lattice tables


@dataclass(frozen=True)
class Tail:
    """Affine germ ``x -> direction * x + offset`` of a lattice bijection."""

    direction: int
    offset: Fraction

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise MapConstructionError(f"tail direction must be +1 or -1, got {self.direction!r}")
        object.__setattr__(self, "offset", as_rational(self.offset))

    def at(self, x: Fraction) -> Fraction:
        return self.direction * x + self.offset

    def to_json(self):
        return {"dir": self.direction, "c": format_rational(self.offset)}


class TableMap(Homeo):
    """Bijection of ``aZ``: a finite table on a block, affine tails outside it.

    The table keys must fill a contiguous run of lattice points ``[L, U]``;
    `upper` applies to ``x > U`` and `lower` to ``x < L``.  With an empty
    table both tails must coincide and the map is affine.
    """

    __slots__ = ("exceptions", "upper", "lower", "group", "lo", "hi")

    def __init__(self, exceptions, upper: Tail, lower: Tail, group=None):
        group = Cyclic(1) if group is None else group
        if not isinstance(group, Cyclic):
            raise MapConstructionError(f"table maps live on lattices, not {group}")
        a = group.step
        table = {as_rational(k): as_rational(v) for k, v in dict(exceptions).items()}
        for v in list(table) + list(table.values()) + [upper.offset, lower.offset]:
            if not group.contains(v):
                raise MapConstructionError(f"{v} is not a point of {group}")
        if table:
            lo, hi = min(table), max(table)
            if len(table) != (hi - lo) / a + 1:
                raise MapConstructionError("table keys must fill a contiguous block")
        else:
            lo = hi = None
            if upper != lower:
                raise MapConstructionError("an empty table needs identical tails")
        self.exceptions = dict(sorted(table.items()))
        self.upper, self.lower, self.group = upper, lower, group
        self.lo, self.hi = lo, hi
        self._check_bijective()
        self._trim()

    @classmethod
    def affine(cls, direction, offset, group=None):
        t = Tail(direction, offset)
        return cls({}, t, t, group)

    def _rays(self):
        """Tail images as (start, direction) rays: values >= start or <= start."""
        a = self.group.step
        up, low = self.upper, self.lower
        rays = []
        first = self.hi + a
        rays.append((up.at(first), up.direction))
        last = self.lo - a
        rays.append((low.at(last), -low.direction))
        return rays

    def _check_bijective(self):
        if self.lo is None:
            return
        values = list(self.exceptions.values())
        if len(set(values)) != len(values):
            raise NotABijectionError("table is not injective")
        rays = self._rays()
        if {d for _, d in rays} != {1, -1}:
            raise NotABijectionError("both tails run off in the same direction")
        top = next(s for s, d in rays if d == 1)
        bottom = next(s for s, d in rays if d == -1)
        a = self.group.step
        gap = {bottom + a * i for i in range(1, int((top - bottom) / a))} if top > bottom else set()
        if top <= bottom or gap != set(values):
            raise NotABijectionError(
                "table image does not fill the gap between the tail images"
            )

    def _trim(self):
        # drop table entries that the neighbouring tail already produces
        a = self.group.step
        table = self.exceptions
        while table:
            if len(table) == 1 and self.upper != self.lower:
                break
            if table[self.hi] == self.upper.at(self.hi):
                del table[self.hi]
                self.hi -= a
            elif table[self.lo] == self.lower.at(self.lo):
                del table[self.lo]
                self.lo += a
            else:
                break
        if not table:
            self.lo = self.hi = None

    @property
    def is_affine(self) -> bool:
        return not self.exceptions

    def _apply(self, x):
        if self.lo is None:
            return self.upper.at(x)
        if x > self.hi:
            return self.upper.at(x)
        if x < self.lo:
            return self.lower.at(x)
        return self.exceptions[x]

    def inverse(self) -> "TableMap":
        if self.lo is None:
            d, c = self.upper.direction, self.upper.offset
            return TableMap.affine(d, -c * d, self.group)
        inv = {v: k for k, v in self.exceptions.items()}
        up, low = self.upper, self.lower
        # the tail heading to +inf inverts to the new upper tail
        if up.direction == 1:
            new_upper, new_lower = Tail(1, -up.offset), Tail(1, -low.offset)
        else:
            new_upper, new_lower = Tail(-1, low.offset), Tail(-1, up.offset)
        return TableMap(inv, new_upper, new_lower, self.group)

    def span(self) -> int:
        """Largest magnitude among block ends and tail offsets."""
        vals = [abs(self.upper.offset), abs(self.lower.offset)]
        if self.lo is not None:
            vals += [abs(self.lo), abs(self.hi)]
        return max(vals)

    def __eq__(self, other):
        if not isinstance(other, TableMap):
            return NotImplemented
        return (self.group, self.upper, self.lower, self.exceptions) == (
            other.group,
            other.upper,
            other.lower,
            other.exceptions,
        )

    def __hash__(self):
        return hash((self.group, self.upper, self.lower, tuple(self.exceptions.items())))

    def __repr__(self):
        return (
            f"TableMap({ {str(k): str(v) for k, v in self.exceptions.items()} }, "
            f"upper=({self.upper.direction:+d}, {self.upper.offset}), "
            f"lower=({self.lower.direction:+d}, {self.lower.offset}) | {self.group})"
        )


def as_table(f) -> TableMap:
    """Rewrite a lattice PL map (necessarily affine) as a table map."""
    if isinstance(f, TableMap):
        return f
    if isinstance(f, PLMap) and isinstance(f.group, Cyclic):
        (p,) = f.pieces
        return TableMap.affine(int(p.slope), p.intercept, f.group)
    raise UnsupportedMapError(f"{type(f).__name__} on {f.group} has no table form")


def _table_compose(f: TableMap, g: TableMap) -> TableMap:
    a = f.group.step
    tails = []
    for is_upper, t in ((True, g.upper), (False, g.lower)):
        heads_up = (t.direction == 1) == is_upper
        outer = f.upper if heads_up else f.lower
        tails.append(Tail(t.direction * outer.direction, outer.direction * t.offset + outer.offset))
    upper, lower = tails
    # beyond +-reach every point and its g-image sit in tail regions
    reach = math.ceil((f.span() + g.span() + a) / a)
    table = {a * n: f._apply(g._apply(a * n)) for n in range(-reach, reach + 1)}
    return TableMap(table, upper, lower, f.group)


# ---------------------------------------------------------------------------
# generic composite


class Composite(Homeo):
    """``maps[0] o maps[1] o ... o maps[-1]``, evaluated pointwise."""

    def __init__(self, *maps):
        groups = {m.group for m in maps}
        if len(groups) != 1:
            raise GroupMismatchError(f"cannot compose maps on {sorted(map(str, groups))}")
        self.maps = maps
        self.group = maps[0].group

    def _apply(self, x):
        for m in reversed(self.maps):
            x = m(x)
        return x

    def inverse(self):
        return Composite(*(m.inverse() for m in reversed(self.maps)))


# ---------------------------------------------------------------------------
# operations


def identity(group) -> Homeo:
    return PLMap.affine(1, 0, group)


def negation(group) -> Homeo:
    return PLMap.affine(-1, 0, group)


def translation(c, group) -> Homeo:
    return PLMap.affine(1, c, group)


def invert(f: Homeo) -> Homeo:
    return f.inverse()


def compose(f: Homeo, g: Homeo) -> Homeo:
    """``x -> f(g(x))``; symbolic for PL and table maps."""
    if f.group != g.group:
        raise GroupMismatchError(f"cannot compose a map on {f.group} with one on {g.group}")
    if isinstance(f, PLMap) and isinstance(g, PLMap):
        return _pl_compose(f, g)
    if isinstance(f, (PLMap, TableMap)) and isinstance(g, (PLMap, TableMap)):
        return _table_compose(as_table(f), as_table(g))
    return Composite(f, g)


def _symbolic(f):
    if isinstance(f, TableMap):
        return f
    if isinstance(f, PLMap):
        return as_table(f) if isinstance(f.group, Cyclic) else f
    raise UnsupportedMapError(f"{type(f).__name__} has no finite symbolic form")


def is_involution(f: Homeo) -> bool:
    """Decide ``f o f == id`` exactly from the map data."""
    if getattr(f, "moves_every_point", False):
        return False
    f = _symbolic(f)
    ff = compose(f, f)
    if isinstance(ff, PLMap):
        return ff == identity(f.group)
    return ff == TableMap.affine(1, 0, f.group)


def _solve_affine(slope, intercept, lo, hi, group, points, rejected):
    if slope == 1:
        if intercept == 0:
            raise ContinuumOfFixedPointsError(
                f"identity on [{'-inf' if lo is None else lo}, {'inf' if hi is None else hi}]"
            )
        return
    x = intercept / (1 - slope)
    if (lo is not None and x < lo) or (hi is not None and x > hi):
        return
    (points if group.contains(x) else rejected).add(x)


def fixed_points(f: Homeo, w=None) -> FixedPoints:
    """All fixed points of `f` in its group, solved exactly.

    The window is accepted for interface symmetry; PL and table maps are
    solved over the whole group, so the result is always complete.
    """
    if getattr(f, "moves_every_point", False):
        return FixedPoints((), True)
    f = _symbolic(f)
    points, rejected = set(), set()
    if isinstance(f, PLMap):
        for p in f.pieces:
            _solve_affine(p.slope, p.intercept, p.lo, p.hi, f.group, points, rejected)
    else:
        a = f.group.step
        for k, v in f.exceptions.items():
            if k == v:
                points.add(k)
        if f.lo is None:
            _solve_affine(f.upper.direction, f.upper.offset, None, None, f.group, points, rejected)
        else:
            _solve_affine(f.upper.direction, f.upper.offset, f.hi + a, None, f.group, points, rejected)
            _solve_affine(f.lower.direction, f.lower.offset, None, f.lo - a, f.group, points, rejected)
    return FixedPoints(tuple(sorted(points)), True, tuple(sorted(rejected)))


def monotonicity(f: Homeo, w=None) -> Monotonicity:
    if isinstance(f, PLMap):
        return Monotonicity.STRICTLY_INCREASING if f.increasing else Monotonicity.STRICTLY_DECREASING
    if isinstance(f, TableMap):
        if f.lo is None:
            d = f.upper.direction
        else:
            a = f.group.step
            xs = [f.lo - a] + list(f.exceptions) + [f.hi + a]
            ys = [f._apply(x) for x in xs]
            steps = {(y1 > y0) for y0, y1 in zip(ys, ys[1:])}
            dirs = {f.upper.direction, f.lower.direction}
            if len(steps) != 1 or len(dirs) != 1 or (steps.pop() != (dirs.pop() == 1)):
                return Monotonicity.NON_MONOTONE
            d = f.upper.direction
        return Monotonicity.STRICTLY_INCREASING if d == 1 else Monotonicity.STRICTLY_DECREASING
    witness = getattr(f, "monotonicity_witness", None)
    if witness is None:
        raise UnsupportedMapError(f"monotonicity of {type(f).__name__} is not decidable here")
    return witness()[0]


# ---------------------------------------------------------------------------
# JSON


def _bound(text, infinite):
    if text in infinite:
        return None
    return as_rational(str(text))


def map_from_json(obj) -> Homeo:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError("a map is an object with exactly one of 'pl', 'table', 'example_map'")
    (kind, body), = obj.items()
    if kind == "pl":
        group = group_from_json(body["group"])
        pieces = [
            Piece(
                _bound(p["lo"], ("-inf", None)),
                _bound(p["hi"], ("inf", "+inf", None)),
                as_rational(str(p["slope"])),
                as_rational(str(p["intercept"])),
            )
            for p in body["pieces"]
        ]
        return PLMap(pieces, group)
    if kind == "table":
        group = group_from_json(body.get("group", {"kind": "cyclic", "step": "1"}))
        table = {as_rational(str(k)): as_rational(str(v)) for k, v in body.get("exceptions", {}).items()}

        def tail(t):
            return Tail(int(t["dir"]), as_rational(str(t["c"])))

        upper = tail(body["upper"])
        lower = tail(body.get("lower", body["upper"]))
        return TableMap(table, upper, lower, group)
    if kind == "example_map":
        from .dynamics import example_map, scheme_from_text

        return example_map(scheme_from_text(body["scheme"]))
    raise ParseError(f"unknown map kind {kind!r}")


def map_to_json(f: Homeo):
    if isinstance(f, PLMap):
        return {"pl": {"group": f.group.to_json(), "pieces": [p.to_json() for p in f.pieces]}}
    if isinstance(f, TableMap):
        return {
            "table": {
                "group": f.group.to_json(),
                "exceptions": {format_rational(k): format_rational(v) for k, v in f.exceptions.items()},
                "upper": f.upper.to_json(),
                "lower": f.lower.to_json(),
            }
        }
    to_json = getattr(f, "to_json", None)
    if to_json is None:
        raise UnsupportedMapError(f"{type(f).__name__} has no JSON form")
    return to_json()
