"""
Recognising free divisors
=========================

Two ways to certify freeness from n fields: compare the determinant with a
known equation, or check bracket closure and a reduced determinant.
"""

from derlogkit import (Ring, VField, derlog_hypersurface, linear_free_divisor_check,
                       saito_criterion, saito_second_criterion)

R = Ring(("x", "y", "z"))
nc = [VField.parse(s, R) for s in ("x*d/dx", "y*d/dy", "z*d/dz")]
print(saito_criterion(nc, R.parse("x*y*z")).verdict)
print(linear_free_divisor_check(nc).verdict)

# Without an equation: the determinant x^2 + y^2 is reduced and the pair is closed.
P = Ring(("x", "y"))
pair = [VField.parse("x*d/dx + y*d/dy", P), VField.parse("x*d/dy - y*d/dx", P)]
rep = saito_second_criterion(pair)
print(rep.verdict, rep.witness("determinant"))

# The umbrella itself needs four fields, but adding the plane z = 0 gives a
# free divisor with a basis of three.
g = R.parse("z*(x^2 - y^2*z)")
D = derlog_hypersurface(g)
for eta in D:
    print("   ", eta)
print(saito_criterion(list(D.gens), g).verdict)
