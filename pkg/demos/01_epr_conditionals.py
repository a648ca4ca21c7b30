"""
Conditional statistics of a spin-s singlet
==========================================

Two polarizers a relative angle alpha apart each report transmission (1) or
not (0). The single-detector rate is 1/(2s+1) whatever the orientation; all
the angle dependence lives in the conditional matrix P(i|j).
"""

from __future__ import annotations

import math

import numpy as np

from entcorr import epr

# spins are stored as the integer 2s
for twice_s in (1, 2, 4, 10):
    spin = epr.SpinMagnitude(twice_s)
    m = epr.epr_marginals(spin)
    print(f"s={spin}: P(0)={m.p0:.4f} P(1)={m.p1:.4f}")

# %%
# At s=1/2 and alpha=pi the outcomes agree with certainty.
print(epr.epr_conditional(1, math.pi).table)

# %%
# Columns are P(.|0) and P(.|1). Each sums to one.
cond = epr.epr_conditional(2, math.pi / 2)
print(cond.table, cond.table.sum(axis=0))

# the joint table is the conditional times the marginal of b
joint = epr.epr_joint(2, math.pi / 2)
print("p(1,1) =", joint[1, 1], "=", epr.epr_transmission(2, math.pi / 2))

# %%
# P(1|0) shrinks as s grows: the large-spin statistics freeze into the
# deterministic classical table except at alpha = pi.
alphas = np.deg2rad([30, 60, 90, 120, 150])
print("alpha(deg)  " + "  ".join(f"s={epr.SpinMagnitude(n)!s:>4}" for n in (1, 4, 20, 100)))
for a in alphas:
    vals = [epr.epr_conditional(n, a)[1, 0] for n in (1, 4, 20, 100)]
    print(f"{math.degrees(a):9.0f}   " + "  ".join(f"{v:6.4f}" for v in vals))

print(epr.classical_limit_conditional(math.pi / 3).table)
print(epr.classical_limit_conditional(math.pi).table)
