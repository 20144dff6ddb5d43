"""
Rank obstructions in a quintic family
=====================================

``p(t) = t + lam t^2 + lam^2 t^3 + lam^3 t^4 + c t^5`` has Taylor data at 0
of Hankel rank 1. Its 3x3 Loewner determinant starts with a negative
term, so p cannot be 3-monotone on any interval ``[0, alpha)``.
"""

# %%
from fractions import Fraction

from monogap import falsify_Pn_near_zero, moment_flags
from monogap.loewner import quintic_family, quintic_family_detM3

lam = Fraction(1, 2)
for c in (Fraction(1), lam**4):
    det = quintic_family_detM3(lam, c)
    k, coeff = det.lowest_term()
    print(f"c = {c}: lowest term of det M_3 is {coeff} t^{k}")

# %%
# The same data through the moment lens. The Hankel rank is 1 while the
# 3x3 Hankel matrix has rank 2: no positive measure can extend these
# moments, which is another way to see the order-3 failure.
rep = moment_flags(quintic_family(lam, 2), 3)
print("b            =", [str(x) for x in rep.b])
print("hankel rank  =", rep.hankel_rank, " matrix rank =", rep.matrix_rank)
print("obstruction  =", rep.extension_obstruction)

# %%
# A concrete witness: a principal minor negative right of the origin.
fals = falsify_Pn_near_zero(quintic_family(lam, 2), 3)
print("minor", fals.indices, "=", fals.minor)
print("value at t0 =", fals.t0, "is", fals.value)
