"""Gibbs-Shannon entropies, in bits, of EPR and GHZ outcome tables.

Two routes are kept on purpose: generic entropies of explicit tables, and
closed forms used by the sweeps and scans. The tests hold them together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import epr, ghz
from .tables import NORM_TOL, ProbTable, scalar_or_array

CONSISTENCY_TOL = 1e-9


def _xlog2x(p: np.ndarray) -> np.ndarray:
    # 0 log 0 := 0, taken as a branch rather than a limit
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)


def binary_entropy(q):
    """h(q) = -q log2 q - (1-q) log2(1-q); scalar or array input."""
    q = np.asarray(q, dtype=float)
    if np.any(q < -1e-12) or np.any(q > 1 + 1e-12) or np.any(np.isnan(q)):
        raise ValueError("binary_entropy argument must lie in [0, 1]")
    q = np.clip(q, 0.0, 1.0)
    return scalar_or_array(-(_xlog2x(q) + _xlog2x(1.0 - q)))


def shannon_entropy(p) -> float:
    """Entropy of a ProbTable or of any array of probabilities (flattened)."""
    probs = p.probs if isinstance(p, ProbTable) else np.asarray(p, dtype=float).ravel()
    if probs.min() < -1e-12:
        raise ValueError("negative probability in table")
    if abs(probs.sum() - 1.0) > NORM_TOL:
        raise ValueError(f"table is not normalized (sum = {probs.sum()!r})")
    return float(-np.sum(_xlog2x(np.clip(probs, 0.0, None))))


def conditional_entropy(joint, conditional) -> float:
    """H(X|Y) = -Σ p(x, y) log2 p(x|y), weighted by the joint.

    Both tables have the outcome of X on axis 0 and the conditioning
    outcomes on the remaining axes. The conditional must agree with
    ``joint / marginal`` wherever the conditioning event has weight.
    """
    pj = np.asarray(getattr(joint, "table", joint), dtype=float)
    pc = np.asarray(getattr(conditional, "table", conditional), dtype=float)
    if pj.shape != pc.shape:
        raise ValueError(f"shape mismatch: joint {pj.shape} vs conditional {pc.shape}")
    if abs(pj.sum() - 1.0) > NORM_TOL:
        raise ValueError("joint table is not normalized")
    cond_marginal = pj.sum(axis=0, keepdims=True)
    if np.max(np.abs(pj - pc * cond_marginal)) > CONSISTENCY_TOL:
        raise ValueError("joint and conditional tables are not Bayes-consistent")
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(pj > 0.0, pj * np.log2(np.where(pc > 0.0, pc, 1.0)), 0.0)
    return float(-terms.sum())


def epr_marginal_entropy(s) -> float:
    """-(1/(2s+1)) log2[(2s)^(2s) / (2s+1)^(2s+1)]."""
    n = epr.as_spin(s).twice_s
    return -(n * math.log2(n) - (n + 1) * math.log2(n + 1)) / (n + 1)


def epr_conditional_entropy(s, alpha):
    """Closed-form H(a|b) at relative angle α; vectorized over α."""
    n = epr.as_spin(s).twice_s
    x = np.asarray(epr.sin_power(s, alpha))
    p1_given_0 = (1.0 - x) / n
    return scalar_or_array(
        n / (n + 1) * np.asarray(binary_entropy(np.clip(p1_given_0, 0.0, 1.0)))
        + np.asarray(binary_entropy(x)) / (n + 1)
    )


@dataclass(frozen=True)
class EprEntropySet:
    H_a: float
    H_b: float
    H_joint: float
    H_a_given_b: float
    H_b_given_a: float

    def as_dict(self) -> dict[str, float]:
        return dict(self.__dict__)


def epr_entropies(s, alpha: float) -> EprEntropySet:
    joint = epr.epr_joint(s, alpha)
    cond_a_given_b = epr.epr_conditional(s, alpha)
    pa, pb = joint.marginal_a(), joint.marginal_b()
    # conditional of b given a, laid out with b's outcome on axis 0
    with np.errstate(divide="ignore", invalid="ignore"):
        cond_b_given_a = np.where(pa[np.newaxis, :] > 0, joint.table.T / pa[np.newaxis, :], 0.5)
    return EprEntropySet(
        H_a=shannon_entropy(pa),
        H_b=shannon_entropy(pb),
        H_joint=shannon_entropy(joint.table),
        H_a_given_b=conditional_entropy(joint, cond_a_given_b),
        H_b_given_a=conditional_entropy(joint.table.T, cond_b_given_a),
    )


@dataclass(frozen=True)
class GhzEntropySet:
    H_singles: tuple[float, float, float]
    H_pairs: dict
    H_triple: float
    H_1_given_23: float

    def as_dict(self) -> dict:
        return {
            "H_singles": list(self.H_singles),
            "H_pairs": {f"{i}{j}": v for (i, j), v in self.H_pairs.items()},
            "H_triple": self.H_triple,
            "H_1_given_23": self.H_1_given_23,
        }


def ghz_conditional_entropy(phi):
    """H(φ1 | φ2 φ3) = h((1 - cos φ)/2) for angle sum φ; vectorized."""
    return binary_entropy(ghz.odd_weight(phi))


def ghz_triple_entropy(phi):
    return scalar_or_array(2.0 + np.asarray(ghz_conditional_entropy(phi)))


def ghz_entropies(angles) -> GhzEntropySet:
    full = ghz.ghz_full_distribution(angles)
    marg = ghz.ghz_pair_marginals(angles)
    return GhzEntropySet(
        H_singles=tuple(shannon_entropy(marg[(i,)]) for i in range(3)),
        H_pairs={key: shannon_entropy(marg[key]) for key in [(0, 1), (0, 2), (1, 2)]},
        H_triple=shannon_entropy(full.table),
        H_1_given_23=conditional_entropy(full, ghz.ghz_conditionals(angles)),
    )
