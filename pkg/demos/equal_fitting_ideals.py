"""
Fitting ideals do not determine the module
==========================================

A three-generator submodule of the fields tangent to the origin in the
plane has the same Fitting ideals as the full module, but misses x d/dx.
"""

from derlogkit import (Point, Ring, VFModule, VField, fitting_ideal, lie_bracket,
                       module_equal, module_membership, smooth_criterion)

R = Ring(("x", "y"))
L = VFModule.parse(["y*d/dx", "x*d/dy", "x*d/dx - y*d/dy"], R)
full = VFModule.parse(["x*d/dx", "y*d/dx", "x*d/dy", "y*d/dy"], R)

for k in (1, 2):
    print(f"I_{k}:", fitting_ideal(L, k), "vs", fitting_ideal(full, k))

# L is a Lie algebra (it is sl_2 acting linearly)
a, b, c = L.gens
print("[a,b] =", lie_bracket(a, b), module_membership(lie_bracket(a, b), L))

print("same module?", module_equal(L, full))
print("x d/dx in L?", module_membership(VField.parse("x*d/dx", R), L))

# The pointwise generation test sees the difference: the linear parts of L
# span only the trace-free matrices.
print("L:   ", smooth_criterion(L, 0, Point.origin(R)).witnesses)
print("full:", smooth_criterion(full, 0).witnesses)
