import sys
from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from regroup import Cyclic, FullRationals, MAdic, PLMap, Piece

Z = Cyclic(1)
D = MAdic(2)
Q = FullRationals()

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
dyadics = st.builds(lambda n, k: F(n, 2**k), st.integers(-2000, 2000), st.integers(0, 6))
integers = st.integers(-10**6, 10**6).map(F)


def pl(group, *pieces):
    """Pieces as (lo, hi, slope, intercept) with None for an open end."""
    return PLMap([Piece(*(None if v is None else F(v) for v in p)) for p in pieces], group)


def bent_involution():
    return pl(D, (None, 0, -2, 0), (0, None, F(-1, 2), 0))


def three_piece():
    return pl(D, (None, 0, 1, 1), (0, 1, 2, 1), (1, None, 1, 2))


@pytest.fixture
def reflect_about_one():
    return PLMap.affine(-1, 2, Z)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
