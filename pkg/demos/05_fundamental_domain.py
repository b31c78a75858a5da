"""
Conjugating an increasing map to a shift
========================================

An increasing fixed-point-free PL map of the dyadic rationals is tiled by
iterates of the fundamental domain ``[0, f(0))``.  Declaring the
conjugacy to be the identity there and pushing it along orbits produces
a PL homeomorphism ``t`` with ``t o f = (x -> x + c) o t``.
"""
from regroup import MAdic, PLMap, Piece, Window, check_conjugacy, monotone_to_shift, translation

D = MAdic(2)
f = PLMap([Piece(None, 0, 1, 1), Piece(0, 1, 2, 1), Piece(1, None, 1, 2)], D)

att = monotone_to_shift(f, w=Window(-4, 4, 5))
print(att.status, "shift by", att.shift_constant)
print("t =", att.t)

# %%
rep = check_conjugacy(att.t, f, translation(att.shift_constant, D), Window(-4, 4, 5))
print(rep.status, "at", rep.checked, "points")
