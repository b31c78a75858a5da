"""
A fixed-point-free bijection of Z that is not a shift
=====================================================

Sort the integers by 2-adic valuation (0 joins the odd numbers) and step
to the next element of the same class.  No point is periodic, yet the map
is not conjugate to any shift: a shift by c has exactly |c| orbits, while
this map has one orbit per class, and there are infinitely many classes.
"""
from regroup import Cyclic, Window, example_map, shift_obstruction, translation
from regroup.dynamics import MAdicValuation, bijection_report, periodic_point

f = example_map(MAdicValuation(2))
print({x: int(f(x)) for x in range(-4, 9)})

# %%
w = Window(-1024, 1024)
print(bijection_report(f, w).status, "periodic point:", periodic_point(f, w, 256))

# %%
# Orbit counts grow by one with every doubling of the window.
verdict = shift_obstruction(f, [2**k for k in range(4, 13)])
print(verdict.to_json()["verdict"], [n for _, n in verdict.growth])

# %%
# For comparison a genuine shift settles at |c| orbits.
print(shift_obstruction(translation(5, Cyclic(1)), [16, 64, 256]).to_json()["verdict"])
