"""Exact rational scalars.

`fractions.Fraction` already keeps values in lowest terms with a positive
denominator, so it is used directly as the scalar type.  This module adds
the parsing/formatting conventions used in JSON I/O, a three-way compare,
and m-adic valuations of integers.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import ParseError

Rational = Fraction

__all__ = [
    "INFINITY",
    "Ordering",
    "Rational",
    "add",
    "as_rational",
    "cmp",
    "dyadic_valuation",
    "format_rational",
    "mul",
    "neg",
    "parse_rational",
]


class _Infinity:
    """Valuation of zero.  Compares above every integer; supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("regroup.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITY = _Infinity()


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Rejects zero denominators and decimals."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def as_rational(x) -> Fraction:
    """Coerce ints, rational strings and Fractions; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    value = getattr(x, "value", None)
    if isinstance(value, Fraction):
        return value
    raise ParseError(f"cannot use {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(as_rational(q))


def add(a, b) -> Fraction:
    return as_rational(a) + as_rational(b)


def neg(a) -> Fraction:
    return -as_rational(a)


def mul(a, b) -> Fraction:
    return as_rational(a) * as_rational(b)


def cmp(a, b) -> Ordering:
    d = as_rational(a) - as_rational(b)
    return Ordering((d > 0) - (d < 0))


def dyadic_valuation(a, base: int = 2):
    """Largest k with ``base**k`` dividing the integer `a`; `INFINITY` for 0."""
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")
    q = as_rational(a)
    if q.denominator != 1:
        raise ValueError(f"valuation is defined on integers only, got {q}")
    n = q.numerator
    if n == 0:
        return INFINITY
    n = abs(n)
    k = 0
    while n % base == 0:
        n //= base
        k += 1
    return k
