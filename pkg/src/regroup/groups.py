"""Computable subgroups of the real line.

Three kinds are supported: the discrete groups ``aZ`` (`Cyclic`), the
m-adic rationals ``Z[1/m]`` (`MAdic`) and the full rationals
(`FullRationals`).  Membership is decidable for each, and any bounded
window can be enumerated once a denominator bound is fixed for the dense
kinds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import GroupMismatchError, MembershipError, ParseError, WindowError
from .rationals import as_rational, format_rational

__all__ = [
    "Cyclic",
    "FullRationals",
    "GroupDescriptor",
    "GroupElement",
    "MAdic",
    "Window",
    "contains",
    "enumerate_window",
    "group_from_json",
    "native_add",
    "native_neg",
    "neutral",
    "simplest_between",
    "window_from_json",
]


def _is_power_of(n: int, m: int) -> bool:
    while n % m == 0:
        n //= m
    return n == 1


@dataclass(frozen=True)
class Cyclic:
    """The discrete group ``step * Z``."""

    step: Fraction

    def __post_init__(self):
        step = as_rational(self.step)
        if step <= 0:
            raise ParseError(f"cyclic step must be positive, got {step}")
        object.__setattr__(self, "step", step)

    is_dense = False

    def contains(self, q) -> bool:
        return (as_rational(q) / self.step).denominator == 1

    def to_json(self):
        return {"kind": "cyclic", "step": format_rational(self.step)}

    def __str__(self):
        return "Z" if self.step == 1 else f"({self.step})Z"


@dataclass(frozen=True)
class MAdic:
    """``Z[1/m]``: rationals whose denominator divides a power of `base`."""

    base: int

    def __post_init__(self):
        if isinstance(self.base, bool) or not isinstance(self.base, int) or self.base < 2:
            raise ParseError(f"m-adic base must be an integer >= 2, got {self.base!r}")

    is_dense = True

    def contains(self, q) -> bool:
        # d | m^k for some k  iff  every prime of d divides m
        d = as_rational(q).denominator
        while d != 1:
            g = math.gcd(d, self.base)
            if g == 1:
                return False
            d //= g
        return True

    def to_json(self):
        return {"kind": "madic", "base": self.base}

    def __str__(self):
        return f"Z[1/{self.base}]"


@dataclass(frozen=True)
class FullRationals:
    is_dense = True

    def contains(self, q) -> bool:
        as_rational(q)
        return True

    def to_json(self):
        return {"kind": "rationals"}

    def __str__(self):
        return "Q"


GroupDescriptor = Union[Cyclic, MAdic, FullRationals]


def contains(g: GroupDescriptor, q) -> bool:
    return g.contains(q)


def group_from_json(obj) -> GroupDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"group descriptor must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    if kind == "cyclic":
        return Cyclic(as_rational(obj.get("step", "1")))
    if kind == "madic":
        base = obj.get("base")
        if isinstance(base, str):
            try:
                base = int(base)
            except ValueError:
                raise ParseError(f"bad m-adic base {base!r}") from None
        return MAdic(base)
    if kind == "rationals":
        return FullRationals()
    raise ParseError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class GroupElement:
    value: Fraction
    group: GroupDescriptor

    def __post_init__(self):
        v = as_rational(self.value)
        if not self.group.contains(v):
            raise MembershipError(f"{v} is not an element of {self.group}")
        object.__setattr__(self, "value", v)

    def __str__(self):
        return format_rational(self.value)


def _same_group(x: GroupElement, y: GroupElement):
    if x.group != y.group:
        raise GroupMismatchError(f"{x.group} vs {y.group}")


def native_add(x: GroupElement, y: GroupElement) -> GroupElement:
    _same_group(x, y)
    return GroupElement(x.value + y.value, x.group)


def native_neg(x: GroupElement) -> GroupElement:
    return GroupElement(-x.value, x.group)


def neutral(g: GroupDescriptor) -> GroupElement:
    return GroupElement(Fraction(0), g)


@dataclass(frozen=True)
class Window:
    """A closed interval ``[lo, hi]`` plus a resolution for dense groups.

    `denom_bound` is an exponent k for ``Z[1/m]`` (denominators divide m**k)
    and a plain maximum denominator for Q.  It is ignored for cyclic groups.
    """

    lo: Fraction
    hi: Fraction
    denom_bound: Optional[int] = None

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise WindowError(f"empty window [{lo}, {hi}]")
        if self.denom_bound is not None and (
            isinstance(self.denom_bound, bool)
            or not isinstance(self.denom_bound, int)
            or self.denom_bound < 0
        ):
            raise WindowError(f"bad denominator bound {self.denom_bound!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def to_json(self):
        out = {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}
        if self.denom_bound is not None:
            out["denom_exp"] = self.denom_bound
        return out

    def __str__(self):
        tail = "" if self.denom_bound is None else f", res={self.denom_bound}"
        return f"[{self.lo}, {self.hi}{tail}]"


def window_from_json(obj) -> Window:
    if not isinstance(obj, dict) or "lo" not in obj or "hi" not in obj:
        raise ParseError(f"window must be an object with 'lo' and 'hi': {obj!r}")
    bound = None
    for key in ("denom_exp", "denom_bound", "max_denom"):
        if key in obj:
            bound = obj[key]
            break
    if bound is not None and not isinstance(bound, int):
        raise ParseError(f"denominator bound must be an integer, got {bound!r}")
    return Window(as_rational(str(obj["lo"])), as_rational(str(obj["hi"])), bound)


def enumerate_window(g: GroupDescriptor, w: Window) -> list[Fraction]:
    """Members of `g` in ``[w.lo, w.hi]`` at the window's resolution, increasing."""
    lo, hi = w.lo, w.hi
    if isinstance(g, Cyclic):
        a = g.step
        first, last = math.ceil(lo / a), math.floor(hi / a)
        return [a * n for n in range(first, last + 1)]
    if w.denom_bound is None:
        raise WindowError(f"window on dense group {g} needs a denominator bound")
    if isinstance(g, MAdic):
        d = g.base**w.denom_bound
        first, last = math.ceil(lo * d), math.floor(hi * d)
        return [Fraction(n, d) for n in range(first, last + 1)]
    if w.denom_bound < 1:
        raise WindowError("maximum denominator for Q must be at least 1")
    found = set()
    for q in range(1, w.denom_bound + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            found.add(Fraction(p, q))
    return sorted(found)


def _closest_to_zero(first: int, last: int) -> int:
    if first <= 0 <= last:
        return 0
    return first if first > 0 else last


def simplest_between(g: GroupDescriptor, lo=None, hi=None) -> Fraction:
    """Simplest element of a dense group in the open interval ``(lo, hi)``.

    Simplest means smallest denominator, then smallest absolute numerator;
    `None` stands for an infinite endpoint.
    """
    if not g.is_dense:
        raise WindowError(f"{g} is discrete; open intervals may be empty")
    if lo is not None and hi is not None and lo >= hi:
        raise WindowError(f"empty interval ({lo}, {hi})")
    if isinstance(g, MAdic):
        dens = (g.base**k for k in range(0, 10**6))
    else:
        dens = range(1, 10**9)
    for q in dens:
        first = -(10**100) if lo is None else math.floor(lo * q) + 1
        last = 10**100 if hi is None else math.ceil(hi * q) - 1
        if first <= last:
            return Fraction(_closest_to_zero(first, last), q)
    raise AssertionError("unreachable for a non-empty interval")
