"""
Checking the closed forms against explicit state vectors
========================================================

The oracle builds the singlet of two spin-s particles, rotates the
polarizer projectors with the ladder operators, and sums the four outcome
probabilities. It knows nothing about the closed forms.
"""

from __future__ import annotations

import math

import numpy as np

from entcorr import epr, ghz, oracle, verify
from entcorr.oracle import Direction

a = Direction(0.4, 1.0)
b = Direction(2.1, 4.0)
alpha = a.angle_to(b)
print(f"relative angle {math.degrees(alpha):.2f} deg")

for twice_s in (1, 2, 3, 10):
    brute = oracle.epr_joint_oracle(twice_s, a, b).table
    closed = epr.epr_joint(twice_s, alpha).table
    print(f"2s={twice_s:2d}  max |oracle - closed| = {np.max(np.abs(brute - closed)):.1e}")

# %%
# The rotated lowest-weight state points along Direction.vector.
ket = oracle.rotated_state(1, a)
sp, sm = oracle.spin_ladder(1)
sx, sy, sz = (sp + sm) / 2, (sp - sm) / 2j, oracle.spin_z(1)
print("Bloch vector", [round(float(2 * np.vdot(ket, op @ ket).real), 12) for op in (sx, sy, sz)])
print("Direction   ", np.round(a.vector, 12).tolist())

# %%
# GHZ: in-plane analyzers at azimuths phi1, phi2, phi3.
phis = (0.3, 1.7, 2.2)
print(np.max(np.abs(oracle.ghz_joint_oracle(*phis).probs - ghz.ghz_full_distribution(phis).table.ravel())))

# %%
# The sweep behind `entcorr verify oracle`.
for leg in verify.verify_oracle(range(1, 5), grid_deg=15, ghz_grid_deg=30):
    print(leg.to_dict())
