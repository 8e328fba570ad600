"""
Whitney umbrella: why the stratification matters
================================================

x^2 - y^2 z is singular along the z-axis, and the origin is special inside
that axis.  Listing the origin as its own stratum sharpens the bounds.
"""

import itertools

from derlogkit import (ComponentSpec, Ideal, Ring, check_bound_and_sharpness,
                       derlog_hypersurface, saito_matrix)
from derlogkit.criteria import flags

R = Ring(("x", "y", "z"))
f = R.parse("x^2 - y^2*z")
L = derlog_hypersurface(f)
for eta in L:
    print(eta)

surface = ComponentSpec(Ideal([f]), 2, "surface")
axis = ComponentSpec(Ideal.parse(["x", "y"], R), 1, "z-axis", top=False)
origin = ComponentSpec(Ideal.maximal(R), 0, "origin", top=False)

plain = check_bound_and_sharpness(L, [surface, axis])
refined = check_bound_and_sharpness(L, [surface, axis, origin])
print("exact without the origin:", flags(plain, "exact"))
print("exact with the origin:   ", flags(refined, "exact"))

# Four generators are needed, and no three of them have determinant a unit
# multiple of f, so this surface is not a free divisor.
S = saito_matrix(L)
for cols in itertools.combinations(range(4), 3):
    print(cols, S.submatrix(range(3), cols).det())
