"""
Logarithmic fields of a quadric cone
====================================

Compute the module of fields tangent to xw - yz, then compare its Fitting
ideals with powers of the maximal ideal.
"""

from derlogkit import (ComponentSpec, Ideal, Ring, check_bound_and_sharpness,
                       derlog_hypersurface, fitting_ideal, intersect, minimal_generator_count)

R = Ring(("x", "y", "z", "w"))
f = R.parse("x*w - y*z")

L = derlog_hypersurface(f)
print(f"{minimal_generator_count(L)} generators:")
for eta in L:
    print("   ", eta)

# Row and column operations on [[x, y], [z, w]] scale the determinant.
M = Ideal.maximal(R)
print("I_1 = m      :", fitting_ideal(L, 1) == M)
print("I_3 = m^3    :", fitting_ideal(L, 3) == M ** 3)
print("I_4 = (f)∩m^4:", fitting_ideal(L, 4) == intersect(Ideal([f]), M ** 4))

# The same comparison, automated against the cone and its vertex.
comps = [ComponentSpec(Ideal([f]), 3, "cone"),
         ComponentSpec(M, 0, "vertex", top=False)]
rep = check_bound_and_sharpness(L, comps)
print(rep.verdict)
for w in rep.witness("fitting-bound"):
    print(f"  k={w['k']}: contained={w['contained']} exact={w['exact']}")
