"""Sweeps comparing the closed forms against the Hilbert-space oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import epr, ghz, oracle

ORACLE_TOL = 1e-10
# arbitrary azimuth offset so that no analyzer sits on a coordinate axis
_PHASE = 0.37


@dataclass
class OracleComparison:
    leg: str
    checked: int = 0
    max_deviation: float = 0.0
    worst: dict = field(default_factory=dict)

    def update(self, deviation: float, where: dict):
        self.checked += 1
        if deviation > self.max_deviation or not self.worst:
            self.max_deviation = max(deviation, self.max_deviation)
            self.worst = where

    def passed(self, tol: float = ORACLE_TOL) -> bool:
        return self.max_deviation < tol

    def to_dict(self, tol: float = ORACLE_TOL) -> dict:
        return {
            "leg": self.leg,
            "checked": self.checked,
            "max_deviation": self.max_deviation,
            "worst": self.worst,
            "passed": self.passed(tol),
        }


def _grid(step_deg: float) -> np.ndarray:
    return np.deg2rad(np.arange(0.0, 360.0, step_deg))


def compare_epr(twice_spins, grid_deg: float = 5.0) -> OracleComparison:
    """Closed-form joint tables vs the oracle with analyzers ``alpha`` apart in the x-y plane."""
    out = OracleComparison("epr")
    for twice_s in twice_spins:
        spin = epr.SpinMagnitude(int(twice_s))
        a = oracle.Direction.in_plane(_PHASE)
        for alpha in _grid(grid_deg):
            b = oracle.Direction.in_plane(_PHASE + alpha)
            closed = epr.epr_joint(spin, alpha).table
            brute = oracle.epr_joint_oracle(spin, a, b).table
            dev = float(np.max(np.abs(closed - brute)))
            out.update(dev, {"twice_s": spin.twice_s, "alpha": float(alpha), "deviation": dev})
    return out


def compare_ghz(grid_deg: float = 10.0) -> OracleComparison:
    out = OracleComparison("ghz")
    grid = _grid(grid_deg)
    for phi1 in grid:
        for phi2 in grid:
            for phi3 in grid:
                angles = ghz.AngleTriple(phi1, phi2, phi3)
                closed = ghz.ghz_full_distribution(angles).table.ravel()
                brute = oracle.ghz_joint_oracle(phi1, phi2, phi3).probs
                dev = float(np.max(np.abs(closed - brute)))
                out.update(dev, {"phi1": float(phi1), "phi2": float(phi2), "phi3": float(phi3), "deviation": dev})
    return out


def verify_oracle(twice_spins=range(1, 11), grid_deg=5.0, ghz_grid_deg=10.0, include_ghz=True):
    legs = [compare_epr(twice_spins, grid_deg)]
    if include_ghz:
        legs.append(compare_ghz(ghz_grid_deg))
    return legs
