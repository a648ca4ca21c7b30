"""Probability and entropic Bell-type inequalities for EPR and GHZ statistics.

Each evaluator returns an :class:`InequalityReport`. The ``*_lhs`` functions
are vectorized closed forms of the same left-hand sides and feed
:func:`scan_max_violation`.

Analyzer arguments for the EPR functionals are either in-plane angles
(floats or arrays, radians) or :class:`~entcorr.oracle.Direction` objects.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import epr, ghz, infotheory
from .oracle import Direction

SLACK = 1e-12
MAX_EVALUATIONS = 10**8
_CHUNK = 1 << 20

# analyzer azimuths used for the three-particle entropic test
GHZ_BC_GEOMETRY = {
    "phi1": math.pi / 4,
    "phi1_p": 3 * math.pi / 4,
    "phi2": 0.0,
    "phi2_p": math.pi / 2,
}


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    lower_bound: float | None
    upper_bound: float | None
    margin: float
    violated: bool
    inputs: dict
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "bounds": [self.lower_bound, self.upper_bound],
            "margin": self.margin,
            "violated": self.violated,
        }
        if self.details:
            out["details"] = self.details
        return out


def margin_of(lhs, lower=None, upper=None):
    """Signed distance past the nearest violated bound; positive means violated."""
    lhs = np.asarray(lhs, dtype=float)
    parts = []
    if upper is not None:
        parts.append(lhs - upper)
    if lower is not None:
        parts.append(lower - lhs)
    if not parts:
        raise ValueError("an inequality needs at least one bound")
    m = parts[0] if len(parts) == 1 else np.maximum(*parts)
    return float(m) if m.ndim == 0 else m


def _report(name, lhs, lower, upper, inputs, details=None) -> InequalityReport:
    lhs = float(lhs)
    margin = margin_of(lhs, lower, upper)
    return InequalityReport(
        name=name,
        lhs=lhs,
        lower_bound=None if lower is None else float(lower),
        upper_bound=None if upper is None else float(upper),
        margin=margin,
        violated=margin > SLACK,
        inputs=inputs,
        details=details or {},
    )


def _echo(x):
    if isinstance(x, Direction):
        return {"theta": x.theta, "phi": x.phi}
    return float(x)


def relative_angle(x, y):
    """Angle between two analyzers; signed difference for in-plane angles."""
    if isinstance(x, Direction) or isinstance(y, Direction):
        dx = x if isinstance(x, Direction) else Direction.in_plane(x)
        dy = y if isinstance(y, Direction) else Direction.in_plane(y)
        return dx.angle_to(dy)
    return np.asarray(y, dtype=float) - np.asarray(x, dtype=float)


# -- EPR probability inequality ------------------------------------------------


def bell_epr_lhs(s, a, a_p, b, b_p):
    """p(a;b) + p(a';b) - p(a;b') + p(a';b') - p(a) - p(b)."""
    single = epr.epr_marginals(s).p1

    def joint(x, y):
        return np.asarray(epr.epr_transmission(s, relative_angle(x, y)))

    out = joint(a, b) + joint(a_p, b) - joint(a, b_p) + joint(a_p, b_p) - 2 * single
    return float(out) if out.ndim == 0 else out


def bell_epr(s, a, a_p, b, b_p) -> InequalityReport:
    spin = epr.as_spin(s)
    inputs = {"twice_s": spin.twice_s, "a": _echo(a), "a_p": _echo(a_p), "b": _echo(b), "b_p": _echo(b_p)}
    return _report("bell_epr", bell_epr_lhs(spin, a, a_p, b, b_p), -1.0, 0.0, inputs)


# -- GHZ probability inequality ------------------------------------------------


def bell_ghz_lhs(phi1, phi1_p, phi2, phi2_p, phi3, corrected=True):
    """Vectorized left side with the constant pair (1/4) and single (1/2) rates.

    ``corrected=False`` keeps the second triple term at angles
    (φ1', φ1, φ3); the corrected form uses (φ1', φ2, φ3).
    """
    p = ghz.ghz_transmission_sum
    second = phi1_p + (phi2 if corrected else phi1) + phi3
    out = (
        np.asarray(p(phi1 + phi2 + phi3))
        + p(second)
        + p(phi1 + phi2_p + phi3)
        - p(phi1_p + phi2_p + phi3)
        - 0.5
    )
    return float(out) if out.ndim == 0 else out


def bell_ghz(phi1, phi1_p, phi2, phi2_p, phi3, corrected=True) -> InequalityReport:
    def triple(x, y):
        return ghz.ghz_transmission((x, y, phi3))

    marg = ghz.ghz_pair_marginals((phi1, phi2, phi3))
    pair13 = marg[(0, 2)][(1, 1)]
    pair23 = marg[(1, 2)][(1, 1)]
    single3 = marg[(2,)][(1,)]
    second = triple(phi1_p, phi2) if corrected else triple(phi1_p, phi1)
    lhs = triple(phi1, phi2) + second + triple(phi1, phi2_p) - triple(phi1_p, phi2_p) - pair13 - pair23
    inputs = {
        "phi1": phi1, "phi1_p": phi1_p, "phi2": phi2, "phi2_p": phi2_p, "phi3": phi3,
        "corrected": bool(corrected),
    }
    name = "bell_ghz" if corrected else "bell_ghz_literal"
    return _report(name, lhs, -single3, 0.0, inputs)


# -- EPR entropic inequalities -------------------------------------------------


def coplanar_layout(alpha: float) -> dict[str, float]:
    """In-plane analyzers at 0, α, 2α, 3α: a·b' = a'·b' = a'·b = cos α, a·b = cos 3α."""
    return {"a": 0.0, "b_p": alpha, "a_p": 2 * alpha, "b": 3 * alpha}


def _cond_entropy_table(s, x, y) -> float:
    # generic route: entropy of explicit outcome tables
    rel = relative_angle(x, y)
    return infotheory.epr_entropies(s, float(rel)).H_a_given_b


def bc_epr_general_lhs(s, a, a_p, b, b_p):
    def H(x, y):
        return np.asarray(infotheory.epr_conditional_entropy(s, relative_angle(x, y)))

    out = H(a, b) - H(a, b_p) - H(a_p, b_p) - H(a_p, b)
    return float(out) if out.ndim == 0 else out


def bc_epr_general(s, a, a_p, b, b_p) -> InequalityReport:
    """H(a|b) - H(a|b') - H(a'|b') - H(a'|b) <= 0."""
    spin = epr.as_spin(s)
    H = _cond_entropy_table
    lhs = H(spin, a, b) - H(spin, a, b_p) - H(spin, a_p, b_p) - H(spin, a_p, b)
    inputs = {"twice_s": spin.twice_s, "a": _echo(a), "a_p": _echo(a_p), "b": _echo(b), "b_p": _echo(b_p)}
    return _report("bc_epr_general", lhs, None, 0.0, inputs)


def bc_epr_coplanar_lhs(s, alpha):
    """H(3α) - 3 H(α) from the closed-form conditional entropy."""
    H = infotheory.epr_conditional_entropy
    out = np.asarray(H(s, 3 * np.asarray(alpha, dtype=float))) - 3 * np.asarray(H(s, alpha))
    return float(out) if out.ndim == 0 else out


def bc_epr_coplanar(s, alpha: float) -> InequalityReport:
    spin = epr.as_spin(s)
    H = _cond_entropy_table
    lhs = H(spin, 0.0, 3 * alpha) - 3 * H(spin, 0.0, alpha)
    return _report("bc_epr_coplanar", lhs, None, 0.0, {"twice_s": spin.twice_s, "alpha": float(alpha)})


def araki_lieb_epr(s, alpha: float) -> InequalityReport:
    """|H(a) - H(b)| <= H(a;b) <= H(a) + H(b)."""
    spin = epr.as_spin(s)
    ent = infotheory.epr_entropies(spin, alpha)
    lower = abs(ent.H_a - ent.H_b)
    upper = ent.H_a + ent.H_b
    details = {
        "lower_margin": lower - ent.H_joint,
        "upper_margin": ent.H_joint - upper,
        "joint_minus_single": ent.H_joint - ent.H_a,
        "sum_minus_joint": upper - ent.H_joint,
    }
    inputs = {"twice_s": spin.twice_s, "alpha": float(alpha)}
    return _report("araki_lieb_epr", ent.H_joint, lower, upper, inputs, details)


# -- GHZ entropic inequalities -------------------------------------------------


def bc_ghz_lhs(phi1, phi1_p, phi2, phi2_p, phi3):
    H = infotheory.ghz_conditional_entropy
    out = (
        np.asarray(H(phi1 + phi2 + phi3))
        - H(phi1 + phi2_p + phi3)
        - H(phi1_p + phi2_p + phi3)
        - H(phi1_p + phi2 + phi3)
    )
    return float(out) if out.ndim == 0 else out


def bc_ghz(phi1, phi1_p, phi2, phi2_p, phi3) -> InequalityReport:
    """H(1|2,3) - H(1|2',3) - H(1'|2',3) - H(1'|2,3) <= 0 from the 8-outcome tables."""

    def H(x, y):
        return infotheory.ghz_entropies((x, y, phi3)).H_1_given_23

    lhs = H(phi1, phi2) - H(phi1, phi2_p) - H(phi1_p, phi2_p) - H(phi1_p, phi2)
    inputs = {"phi1": phi1, "phi1_p": phi1_p, "phi2": phi2, "phi2_p": phi2_p, "phi3": phi3}
    return _report("bc_ghz", lhs, None, 0.0, inputs)


def bc_ghz_reduced_lhs(phi3):
    H = infotheory.ghz_conditional_entropy
    phi3 = np.asarray(phi3, dtype=float)
    out = np.asarray(H(math.pi / 4 + phi3)) - 3 * np.asarray(H(3 * math.pi / 4 + phi3))
    return float(out) if out.ndim == 0 else out


def bc_ghz_reduced(phi3: float) -> InequalityReport:
    """H(π/4 + φ3) - 3 H(3π/4 + φ3) <= 0, the one-angle reduction at GHZ_BC_GEOMETRY.

    This is not algebraically equal to :func:`bc_ghz` at that geometry: there
    one right-hand term coincides with the left-hand term and the general
    form collapses to -2 H(3π/4 + φ3), which is never positive.
    """
    return _report("bc_ghz_reduced", bc_ghz_reduced_lhs(phi3), None, 0.0, {"phi3": float(phi3)})


def lieb_ruskai_ghz(angles) -> InequalityReport:
    """H(1;3) - H(1) + H(2;3) - H(2) >= 0."""
    t = ghz.as_triple(angles)
    ent = infotheory.ghz_entropies(t)
    lhs = ent.H_pairs[(0, 2)] - ent.H_singles[0] + ent.H_pairs[(1, 2)] - ent.H_singles[1]
    return _report("lieb_ruskai_ghz", lhs, 0.0, None, _triple_inputs(t))


def three_party_subadditivity(angles) -> InequalityReport:
    """[H(1;2;3) - H(2)] - [H(1;2) - H(2)] - [H(3;2) - H(2)] <= 0."""
    t = ghz.as_triple(angles)
    ent = infotheory.ghz_entropies(t)
    h2 = ent.H_singles[1]
    lhs = (ent.H_triple - h2) - (ent.H_pairs[(0, 1)] - h2) - (ent.H_pairs[(1, 2)] - h2)
    return _report("three_party_subadditivity", lhs, None, 0.0, _triple_inputs(t))


def _triple_inputs(t: ghz.AngleTriple) -> dict:
    return {"phi1": t.phi1, "phi2": t.phi2, "phi3": t.phi3}


# -- grid scans ------------------------------------------------------------------


def _named(lhs_fn, lower, upper, **bound_kw):
    def margin(**axes):
        return margin_of(lhs_fn(**bound_kw, **axes), lower, upper)

    return margin


FUNCTIONALS: dict[str, Callable[..., Callable]] = {
    "bell_epr": lambda s: _named(bell_epr_lhs, -1.0, 0.0, s=s),
    "bell_ghz": lambda corrected=True: _named(bell_ghz_lhs, -0.5, 0.0, corrected=corrected),
    "bc_epr_general": lambda s: _named(bc_epr_general_lhs, None, 0.0, s=s),
    "bc_epr_coplanar": lambda s: _named(bc_epr_coplanar_lhs, None, 0.0, s=s),
    "bc_ghz": lambda: _named(bc_ghz_lhs, None, 0.0),
    "bc_ghz_reduced": lambda: _named(bc_ghz_reduced_lhs, None, 0.0),
}


@dataclass(frozen=True)
class ScanResult:
    max_margin: float
    argmax: dict[str, float]
    index: tuple[int, ...]
    evaluations: int

    def to_dict(self) -> dict:
        return {
            "max_margin": self.max_margin,
            "argmax": self.argmax,
            "index": list(self.index),
            "evaluations": self.evaluations,
        }


def scan_max_violation(
    functional,
    grid: Mapping[str, object],
    *,
    fixed: Mapping[str, object] | None = None,
    workers: int = 1,
    max_evaluations: int = MAX_EVALUATIONS,
    **params,
) -> ScanResult:
    """Exhaustive row-major grid search for the largest margin.

    ``functional`` is a name from :data:`FUNCTIONALS` (built with ``params``)
    or a callable taking the grid axes as keyword arrays and returning
    margins. Ties go to the first grid point in row-major order, with the
    axes ordered as in ``grid``; the result does not depend on ``workers``.
    """
    fn = FUNCTIONALS[functional](**params) if isinstance(functional, str) else functional
    fixed = dict(fixed or {})
    names = list(grid)
    axes = [np.atleast_1d(np.asarray(grid[k], dtype=float)).ravel() for k in names]
    if not axes:
        raise ValueError("grid needs at least one axis")
    shape = tuple(len(ax) for ax in axes)
    total = math.prod(shape)
    if total == 0:
        raise ValueError("empty grid axis")
    if total > max_evaluations:
        raise ValueError(f"grid has {total} points, above the limit of {max_evaluations}")

    rest = total // shape[0]
    rows = max(1, _CHUNK // rest)

    def run(start):
        stop = min(start + rows, shape[0])
        mesh = np.meshgrid(axes[0][start:stop], *axes[1:], indexing="ij")
        m = np.broadcast_to(np.asarray(fn(**dict(zip(names, mesh)), **fixed), dtype=float), mesh[0].shape)
        if np.isnan(m).any():
            raise ValueError("functional returned NaN on the grid")
        k = int(np.argmax(m))
        return float(m.flat[k]), start * rest + k

    starts = range(0, shape[0], rows)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(st) for st in starts]

    best, best_flat = results[0]
    for value, flat in results[1:]:
        if value > best:
            best, best_flat = value, flat
    index = tuple(int(i) for i in np.unravel_index(best_flat, shape))
    argmax = {name: float(ax[i]) for name, ax, i in zip(names, axes, index)}
    return ScanResult(best, argmax, index, total)
