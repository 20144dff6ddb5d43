"""
A polynomial that is 2-monotone but not 3-monotone
==================================================

``g_2(t) = t + t^3/3`` sits in the gap between order 2 and order 3 near the
origin. We certify the order-2 side, watch the degree gate close order 3,
and then use the partial-fraction certificate to show ``g_2`` also misses
the intermediate class on the same interval.
"""

# %%
# The Loewner matrix and its minors
# ---------------------------------
# For order 2 the Loewner matrix is 2x2 and its determinant is a
# polynomial in t. Where it stays positive, g_2 is locally 2-monotone.
from monogap import build_loewner, certify_Pn, classify, leading_minor_polys, standard_gap_poly

g2 = standard_gap_poly(2)
minors = leading_minor_polys(build_loewner(g2, 2))
print("g_2       =", g2)
print("minors    =", [str(m) for m in minors])

cert = certify_Pn(g2, 2)
print("alpha     =", cert.alpha, f"(about {float(cert.alpha):.6f}; the true root is 1/sqrt(2))")
print("re-checks =", cert.verify())

# %%
# Orders 1 through 4
# ------------------
# The classifier stops being able to certify at order 3. Degree 3 < 5, so
# no cubic can be 3-monotone on any interval. The higher orders inherit
# that exclusion.
verdict = classify(g2, 4)
for rec in verdict.per_n:
    print(f"n={rec.n}: {rec.status.value:18} {rec.note}")
print("gap at", verdict.gap[0])

# %%
# Falling short of the intermediate class
# ---------------------------------------
# Pick nodes 1/8, 2/8, 3/8, 4/8 and the test polynomial p(x) = x^2. The
# residues a_k weigh g_2 at the nodes; a negative total shows g_2 fails
# the defining implication of the class M_2 on [0, alpha].
from monogap import run_preset

mc = run_preset("paper-n2")
print("a_k   =", [str(a) for a in mc.a_coeffs])
print("sum   =", mc.sum_value)
print("falsifies:", mc.falsifies)

# %%
# A floating-point sanity check
# -----------------------------
# Random ordered pairs C <= D with spectra in [0, alpha - 1/1000] should
# never produce f(C) > f(D). The sampler only raises alarms, it never
# certifies anything.
from fractions import Fraction

from monogap import Interval, falsify_monotone

rep = falsify_monotone(g2, 2, Interval.closed(0, cert.alpha - Fraction(1, 1000)), trials=2000, seed=1)
print("violations found:", rep.found)
