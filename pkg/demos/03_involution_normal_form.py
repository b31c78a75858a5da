"""
Involutions with one fixed point are inversions
===============================================

An involution with a single fixed point ``e`` splits the group into
``A = {a > f(a)}``, its mirror ``f(A)`` and ``{e}``.  Matching ``A + {e}``
with the non-negative part of the group and mirroring the result gives a
map that turns ``f`` into the inversion of a transported group.
"""
from fractions import Fraction as F

from regroup import Cyclic, MAdic, PLMap, Piece, Window, normalize

# %%
# On the integers: reflection about 1.
nf = normalize(PLMap.affine(-1, 2, Cyclic(1)),
               w=Window(-50, 50))
T = nf.transported
print("fixed point", nf.e, " neutral", T.neutral, " 3 (+) 4 =", T.add(3, 4))
print("claim checked at", nf.claim6.checked, "points:", nf.claim6.status)

# %%
# A bent involution on the dyadic rationals: slope -2 left of 0, -1/2 right.
D = MAdic(2)
bent = PLMap([Piece(None, 0, -2, 0), Piece(0, None, F(-1, 2), 0)], D)
nf = normalize(bent, w=Window(-2, 2, 4))
print(nf.to_json()["claim6_cases"], nf.claim6.status)

# %%
# The glued map sends f to negation: h(f(x)) = -h(x).
for x in (F(-1), F(-1, 2), F(0), F(1, 4), F(2)):
    print(x, "->", nf.h_tilde(x), " check:", nf.h_tilde(bent(x)) == -nf.h_tilde(x))
