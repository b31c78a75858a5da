"""
Moving a group law along a bijection
====================================

For a bijection ``h`` of a group, ``x (+) y = h^-1(h(x) + h(y))`` is a new
group law with neutral element ``h^-1(0)``.
"""
from regroup import Cyclic, MAdic, PLMap, TransportedGroup, Window, verify_axioms, verify_isomorphism

Z = Cyclic(1)

# %%
# Transport along x -> x - 1: the new neutral element is 1.
T = TransportedGroup(Z, PLMap.affine(1, -1, Z))
print("3 (+) 4 =", T.add(3, 4), "  neutral =", T.neutral, "  inverse of 5 =", T.neg(5))

# %%
# Every law is checked exhaustively on a window; reports record how many
# cases were examined.
print(verify_axioms(T, Window(-20, 20)).to_json())
print(verify_isomorphism(T, Window(-20, 20)).to_json())

# %%
# On a dense group the window needs a resolution (here 1/16).
D = MAdic(2)
T2 = TransportedGroup(D, PLMap.affine(2, 0, D))
print(verify_axioms(T2, Window(-2, 2, 4)).to_json())
