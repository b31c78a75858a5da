"""Orbits, the infinitely-many-orbits counterexample, and shift conjugacies.

A shift ``x -> x + c`` of ``Z`` has exactly ``|c|`` orbits, and being
conjugate to a shift preserves the number of orbits.  Splitting ``Z`` into
infinitely many classes, each unbounded in both directions, and stepping
to the next element of the same class gives a fixed-point-free (indeed
periodic-point-free) bijection with infinitely many orbits, hence one that
is conjugate to no shift.  Here the classes are m-adic valuation levels.

Orbit counts on finite windows can only ever be evidence: a window cannot
see two chains joining outside it.  `shift_obstruction` says so in its
verdict.  For the example maps the proof is structural -- the valuation
class is an orbit invariant -- and is not something this module computes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ClosureError, MapConstructionError, ParseError, PreconditionError
from .groups import Cyclic, Window, enumerate_window
from .maps import (
    FixedPoints,
    Homeo,
    Monotonicity,
    Piece,
    PLMap,
    TableMap,
    as_table,
    compose,
    fixed_points,
    monotonicity,
    translation,
)
from .rationals import as_rational, dyadic_valuation
from .reports import CheckReport
from .transport import check_conjugacy

__all__ = [
    "MAdicValuation",
    "ObstructionVerdict",
    "OrbitReport",
    "ParityBlocks",
    "ResidueBlocks",
    "ShiftAttempt",
    "SuccessorMap",
    "UnionFind",
    "bijection_report",
    "example_map",
    "monotone_to_shift",
    "orbit_decomposition",
    "periodic_point",
    "radius_window",
    "scheme_from_text",
    "shift_obstruction",
]


# ---------------------------------------------------------------------------
# partitions of Z


@dataclass(frozen=True)
class MAdicValuation:
    """Classes ``Z_n = {x != 0 : v_m(x) = n - 1}``; 0 joins ``Z_1``.

    With finitely many `levels` K the last class ``Z_K`` absorbs every
    valuation ``>= K - 1``.
    """

    base: int = 2
    levels: Optional[int] = None

    def __post_init__(self):
        if self.base < 2:
            raise ParseError("valuation base must be >= 2")
        if self.levels is not None and self.levels < 1:
            raise ParseError("levels must be >= 1")

    def class_of(self, x) -> int:
        x = as_rational(x)
        if x == 0:
            return 1
        n = dyadic_valuation(x, self.base) + 1
        return n if self.levels is None else min(n, self.levels)

    def to_text(self):
        return f"madic:{self.base}" + ("" if self.levels is None else f":{self.levels}")


@dataclass(frozen=True)
class ResidueBlocks:
    """Residue classes mod `modulus`; within-class successor is ``x + modulus``."""

    modulus: int = 2

    def __post_init__(self):
        if self.modulus < 1:
            raise ParseError("modulus must be >= 1")

    def class_of(self, x) -> int:
        return int(as_rational(x)) % self.modulus + 1

    def to_text(self):
        return "parity" if self.modulus == 2 else f"residue:{self.modulus}"


ParityBlocks = ResidueBlocks(2)


def scheme_from_text(text: str):
    """``madic:M[:K]``, ``parity`` or ``residue:R``."""
    parts = str(text).strip().lower().split(":")
    try:
        if parts[0] == "madic" and len(parts) in (2, 3):
            levels = int(parts[2]) if len(parts) == 3 and parts[2] not in ("", "inf") else None
            return MAdicValuation(int(parts[1]), levels)
        if parts == ["parity"]:
            return ParityBlocks
        if parts[0] == "residue" and len(parts) == 2:
            return ResidueBlocks(int(parts[1]))
    except ValueError:
        pass
    raise ParseError(f"unknown partition scheme {text!r}")


class SuccessorMap(Homeo):
    """Next element above (`direction` +1) or below (-1) in the same class."""

    moves_every_point = True

    def __init__(self, scheme: MAdicValuation, direction: int = 1):
        self.scheme = scheme
        self.direction = direction
        self.group = Cyclic(1)

    def step(self, x: int) -> int:
        m, K = self.scheme.base, self.scheme.levels
        if x == 0:
            n, scale, u = 1, 1, 0
        else:
            if m == 2:
                v = (x & -x).bit_length() - 1
            else:
                v, q = 0, x
                while q % m == 0:
                    v, q = v + 1, q // m
            n = v + 1 if K is None else min(v + 1, K)
            scale = m ** (n - 1)
            u = x // scale
        last = K is not None and n == K

        def allowed(u):
            if u == 0:
                return n == 1
            return last or u % m != 0

        u += self.direction
        while not allowed(u):
            u += self.direction
        return u * scale

    def _apply(self, x):
        return Fraction(self.step(int(x)))

    def inverse(self):
        return SuccessorMap(self.scheme, -self.direction)

    def monotonicity_witness(self, radius: int = 64):
        """Find ``x < y`` pairs violating each of increase and decrease."""
        not_inc = not_dec = None
        xs = range(-radius, radius + 1)
        for x in xs:
            for y in range(x + 1, radius + 1):
                fx, fy = self.step(x), self.step(y)
                if not_inc is None and fx > fy:
                    not_inc = (x, y)
                if not_dec is None and fx < fy:
                    not_dec = (x, y)
                if not_inc and not_dec:
                    return Monotonicity.NON_MONOTONE, {"not_increasing": not_inc, "not_decreasing": not_dec}
        if not_inc is None:
            return Monotonicity.STRICTLY_INCREASING, {}
        return Monotonicity.STRICTLY_DECREASING, {}

    def to_json(self):
        return {"example_map": {"scheme": self.scheme.to_text(), "direction": self.direction}}

    def __repr__(self):
        return f"SuccessorMap({self.scheme.to_text()}, direction={self.direction:+d})"


def example_map(scheme) -> Homeo:
    """The union of within-class successor maps for a partition of ``Z``."""
    if isinstance(scheme, ResidueBlocks):
        return TableMap.affine(1, scheme.modulus)
    if isinstance(scheme, MAdicValuation):
        if scheme.levels == 1:
            return TableMap.affine(1, 1)
        return SuccessorMap(scheme)
    raise ParseError(f"unsupported scheme {scheme!r}")


# ---------------------------------------------------------------------------
# orbit counting


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]

    def roots(self):
        return {x for x in self.parent if self.parent[x] == x}


@dataclass
class OrbitReport:
    window: Window
    orbit_count_lower_bound: int
    representatives: list
    classes_touching_boundary: int

    def to_json(self):
        return {
            "window": self.window.to_json(),
            "orbit_count_lower_bound": self.orbit_count_lower_bound,
            "representatives": [str(r) for r in self.representatives],
            "classes_touching_boundary": self.classes_touching_boundary,
        }


def orbit_decomposition(f: Homeo, w: Window) -> OrbitReport:
    """Join ``x`` and ``f(x)`` whenever both lie in the window.

    The count is of chains that no path of `f` inside the window connects.
    """
    if not isinstance(f.group, Cyclic):
        raise PreconditionError("orbit decomposition is for lattice maps")
    xs = enumerate_window(f.group, w)
    inside = set(xs)
    uf = UnionFind(xs)
    finv = f.inverse()
    leaks = set()
    for x in xs:
        y = f(x)
        if y in inside:
            uf.union(x, y)
        else:
            leaks.add(x)
        if finv(x) not in inside:
            leaks.add(x)
    members = {}
    for x in xs:
        members.setdefault(uf.find(x), []).append(x)
    reps = sorted(min(v) for v in members.values())
    touching = len({uf.find(x) for x in leaks})
    return OrbitReport(w, len(reps), reps, touching)


def radius_window(radius: int, group: Optional[Cyclic] = None) -> Window:
    """Lattice points strictly inside ``(-radius*a, radius*a)``."""
    a = Fraction(1) if group is None else group.step
    return Window(-(radius - 1) * a, (radius - 1) * a)


@dataclass
class ObstructionVerdict:
    kind: str  # UNBOUNDED_EVIDENCE | BOUNDED | INCONCLUSIVE
    bound: Optional[int]
    growth: list = field(default_factory=list)
    note: str = ""

    def to_json(self):
        out = {
            "verdict": self.kind if self.bound is None else f"{self.kind}({self.bound})",
            "growth": [{"window": w.to_json(), "orbits": n} for w, n in self.growth],
            "note": self.note,
        }
        return out


def shift_obstruction(f: Homeo, windows: Sequence[Union[int, Window]]) -> ObstructionVerdict:
    """Orbit counts over growing windows, read as evidence about shift-conjugacy.

    Integers in `windows` are radii for `radius_window`.
    """
    if len(windows) < 2:
        raise PreconditionError("need at least two windows")
    growth = []
    for w in windows:
        if not isinstance(w, Window):
            w = radius_window(int(w), f.group)
        growth.append((w, orbit_decomposition(f, w).orbit_count_lower_bound))
    counts = [n for _, n in growth]
    if all(a < b for a, b in zip(counts, counts[1:])):
        return ObstructionVerdict(
            "UNBOUNDED_EVIDENCE",
            None,
            growth,
            "orbit count grew on every window; finite windows give evidence, not proof",
        )
    if counts[-1] == counts[-2]:
        return ObstructionVerdict("BOUNDED", counts[-1], growth, "orbit count stabilised")
    return ObstructionVerdict("INCONCLUSIVE", None, growth, "orbit count neither grew steadily nor settled")


def periodic_point(f: Homeo, w: Window, max_iter: int):
    """First ``(x, k)`` in the window with ``f^k(x) = x``, ``1 <= k <= max_iter``."""
    step = getattr(f, "step", None)
    for x in enumerate_window(f.group, w):
        if step is not None:
            x0 = y = int(x)
            for k in range(1, max_iter + 1):
                y = step(y)
                if y == x0:
                    return x, k
        else:
            y = x
            for k in range(1, max_iter + 1):
                y = f(y)
                if y == x:
                    return x, k
    return None


def bijection_report(f: Homeo, w: Window) -> CheckReport:
    """Round trips through the inverse, and injectivity, on the window."""
    rep = CheckReport("bijection", details={"window": w.to_json()})
    finv = f.inverse()
    seen = {}
    for x in enumerate_window(f.group, w):
        rep.checked += 1
        y = f(x)
        if finv(y) != x or f(finv(x)) != x:
            return rep.fail(x=x, image=y)
        if y in seen:
            return rep.fail(x=x, collides_with=seen[y])
        seen[y] = x
    return rep


# ---------------------------------------------------------------------------
# fundamental domains


@dataclass
class ShiftAttempt:
    status: str  # WITNESS | FAILED_ATTEMPT
    shift_constant: Optional[Fraction] = None
    t: Optional[Homeo] = None
    report: Optional[CheckReport] = None
    domain: Optional[tuple] = None
    offending: Optional[dict] = None
    note: str = ""

    @property
    def ok(self):
        return self.status == "WITNESS" and self.report is not None and self.report.ok

    def to_json(self):
        from .maps import map_to_json

        out = {"status": self.status, "note": self.note}
        if self.shift_constant is not None:
            out["shift_constant"] = str(self.shift_constant)
        if self.domain is not None:
            out["fundamental_domain"] = [str(self.domain[0]), str(self.domain[1])]
        if self.t is not None:
            out["t"] = map_to_json(self.t)
        if self.report is not None:
            out["report"] = self.report.to_json()
        if self.offending is not None:
            out["offending"] = {k: str(v) for k, v in self.offending.items()}
        return out


def _power(f: PLMap, n: int) -> PLMap:
    base = f if n >= 0 else f.inverse()
    out = PLMap.affine(1, 0, f.group)
    for _ in range(abs(n)):
        out = compose(base, out)
    return out


def _orbit_index(f, finv, x, lo, hi, forward, limit):
    """n with f^-n(x) in [lo, hi) (orientation-adjusted), or None past `limit`."""
    y, n = x, 0
    for _ in range(limit + 1):
        inside = lo <= y < hi if forward else hi < y <= lo
        if inside:
            return n, y
        if (y >= hi) if forward else (y <= hi):
            y, n = finv(y), n + 1
        else:
            y, n = f(y), n - 1
    return None


def monotone_to_shift(f: Homeo, g=None, w: Optional[Window] = None, max_steps: Optional[int] = None) -> ShiftAttempt:
    """Try to conjugate an increasing fixed-point-free map to a shift.

    Lattice case: such a map is literally ``x -> x + c`` and the identity
    conjugates it.  Dense PL case: take the fundamental domain
    ``D = [0, f(0))``, let ``t`` be the identity on ``D`` and extend by
    ``t(f^n(x)) = t(x) + n*c`` with ``c = f(0)``, assembled as a PL map
    covering the window.  Orbits that fail to reach ``D`` within
    `max_steps` iterations are reported, not guessed.
    """
    g = f.group if g is None else g
    if w is None:
        raise ValueError("a window is required")
    if monotonicity(f) is not Monotonicity.STRICTLY_INCREASING:
        raise PreconditionError("map is not strictly increasing")
    fp = fixed_points(f)
    if fp.points:
        raise PreconditionError(f"map has fixed points {[str(p) for p in fp.points]}")

    if isinstance(g, Cyclic):
        t = as_table(f)
        if not t.is_affine:
            raise PreconditionError("increasing lattice bijection is not a translation")
        c = t.upper.offset
        ident = TableMap.affine(1, 0, g)
        rep = check_conjugacy(ident, f, translation(c, g), w)
        return ShiftAttempt("WITNESS", c, ident, rep, note="already a shift; identity conjugates it")

    if not isinstance(f, PLMap):
        raise PreconditionError("dense case needs a PL map")
    xs = enumerate_window(g, w)
    # domains can be finer than the window resolution, so allow slack
    limit = max_steps if max_steps is not None else max(4 * len(xs), 1024)
    x0 = Fraction(0)
    x1 = f(x0)
    c = x1 - x0
    forward = c > 0
    finv = f.inverse()
    lo_cov = min(w.lo, f(w.lo)) if g.contains(w.lo) else min(xs[0], f(xs[0]))
    hi_cov = max(w.hi, f(w.hi)) if g.contains(w.hi) else max(xs[-1], f(xs[-1]))

    # orbit of x0 until it brackets the covered interval
    ends = {0: x0}
    n, p = 0, x0
    while (p <= hi_cov) if forward else (p >= lo_cov):
        if n >= limit:
            return ShiftAttempt("FAILED_ATTEMPT", c, domain=(x0, x1), offending={"x": p, "iterations": n},
                                note="forward orbit of the domain did not cover the window")
        n, p = n + 1, f(p)
        ends[n] = p
    n, p = 0, x0
    while (p > lo_cov) if forward else (p < hi_cov):
        if -n >= limit:
            return ShiftAttempt("FAILED_ATTEMPT", c, domain=(x0, x1), offending={"x": p, "iterations": -n},
                                note="backward orbit of the domain did not cover the window")
        n, p = n - 1, finv(p)
        ends[n] = p

    pieces = []
    for k in sorted(ends)[:-1]:
        a, b = sorted((ends[k], ends[k + 1]))
        Fk = _power(f, -k)
        for q in Fk.pieces:
            qlo = a if q.lo is None or q.lo < a else q.lo
            qhi = b if q.hi is None or q.hi > b else q.hi
            if qlo < qhi:
                pieces.append(Piece(qlo, qhi, q.slope, q.intercept + k * c))
    pieces.sort(key=lambda p: p.lo)
    pieces[0] = Piece(None, pieces[0].hi, pieces[0].slope, pieces[0].intercept)
    pieces[-1] = Piece(pieces[-1].lo, None, pieces[-1].slope, pieces[-1].intercept)
    try:
        t = PLMap(pieces, g)
    except ClosureError as exc:
        return ShiftAttempt("FAILED_ATTEMPT", c, domain=(x0, x1), offending={"reason": exc},
                            note="assembled conjugacy does not preserve the group")
    except MapConstructionError as exc:
        return ShiftAttempt("FAILED_ATTEMPT", c, domain=(x0, x1), offending={"reason": exc},
                            note="assembled pieces do not form a homeomorphism")

    rep = check_conjugacy(t, f, translation(c, g), w)
    # independent pointwise route: walk each window point into the domain
    pointwise = CheckReport("orbit_index", details={"max_steps": limit})
    lo_d, hi_d = x0, x1
    for x in xs:
        pointwise.checked += 1
        found = _orbit_index(f, finv, x, lo_d, hi_d, forward, limit)
        if found is None:
            pointwise.fail(x=x, reason="orbit never entered the fundamental domain")
            break
        k, y = found
        if t(x) != y + k * c:
            pointwise.fail(x=x, t=t(x), expected=y + k * c)
            break
    rep.details["orbit_index"] = pointwise.to_json()
    if not pointwise.ok and rep.ok:
        rep.status, rep.counterexample = pointwise.status, pointwise.counterexample
    return ShiftAttempt("WITNESS", c, t, rep, domain=(x0, x1))
