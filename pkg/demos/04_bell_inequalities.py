"""
Probability and information Bell inequalities
=============================================

Each evaluator returns an InequalityReport with a signed margin: positive
means violated, by that much.
"""

from __future__ import annotations

import math

import numpy as np

from entcorr import inequalities as ineq

# %%
# Probability form for EPR at s=1/2: scan three in-plane analyzers with a fixed.
axis = np.deg2rad(np.arange(0.0, 360.0, 2.0))
res = ineq.scan_max_violation("bell_epr", {"a_p": axis, "b": axis, "b_p": axis}, fixed={"a": 0.0}, s=1)
print("max margin", round(res.max_margin, 5), "at", {k: round(math.degrees(v), 1) for k, v in res.argmax.items()})
print("(sqrt 2 - 1)/2 =", (math.sqrt(2) - 1) / 2)

# %%
# Information form, coplanar analyzers at 0, alpha, 2 alpha, 3 alpha.
print(ineq.bc_epr_coplanar(1, math.pi / 12).to_dict())

fine = np.deg2rad(np.arange(3600) * 0.1)
for twice_s in (1, 2, 4, 10):
    r = ineq.scan_max_violation("bc_epr_coplanar", {"alpha": fine}, s=twice_s)
    print(f"2s={twice_s:2d}  largest violation {r.max_margin:.4f} bits at {math.degrees(r.argmax['alpha']):.1f} deg")

# %%
# GHZ information form at the fixed geometry. The one-angle reduction is
# violated at phi3 = pi/4, while the full four-term form sits on the bound.
g = ineq.GHZ_BC_GEOMETRY
print("reduced", ineq.bc_ghz_reduced(math.pi / 4).lhs)
print("general", ineq.bc_ghz(g["phi1"], g["phi1_p"], g["phi2"], g["phi2_p"], math.pi / 4).lhs)
print("general max over phi3:", ineq.bc_ghz_lhs(g["phi1"], g["phi1_p"], g["phi2"], g["phi2_p"], fine).max())

# %%
# Inequalities that always hold for these states.
print(ineq.lieb_ruskai_ghz((0.3, 1.0, 2.0)).lhs, ineq.three_party_subadditivity((math.pi / 2, 0, 0)).lhs)
print(ineq.araki_lieb_epr(1, math.pi / 2).details)
