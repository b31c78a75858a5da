"""
Groups, windows and piecewise-linear maps
=========================================

Three kinds of subgroup of the rationals are supported: lattices ``aZ``,
the m-adic rationals ``Z[1/m]`` and ``Q`` itself.  Dense groups are
explored through finite windows with a resolution.
"""
from fractions import Fraction as F

from regroup import Cyclic, MAdic, PLMap, Piece, Window, compose, enumerate_window, invert

# %%
# A dyadic window at resolution 1/8 has nine points in [0, 1].
D = MAdic(2)
print([str(x) for x in enumerate_window(D, Window(0, 1, 3))])

# %%
# Piecewise-linear maps are validated on construction: continuity, one
# monotone direction, and slopes that keep the group closed.
f = PLMap([Piece(None, 0, 1, 1), Piece(0, 1, 2, 1), Piece(1, None, 1, 2)], D)
print(f)
print("inverse:", invert(f))

# %%
# A slope of 3 is refused: its inverse has slope 1/3, which leaves Z[1/2].
try:
    PLMap.affine(3, 0, D)
except Exception as exc:
    print(type(exc).__name__, exc)

# %%
# Composition is exact and stays piecewise linear.
g = compose(f, invert(f))
print("f o f^-1 =", g)
print("on the lattice:", PLMap.affine(-1, 2, Cyclic(1))(F(5)))
