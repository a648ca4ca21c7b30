"""Closed-form statistics of the three-qubit GHZ state with in-plane analyzers.

Every quantity depends on the analyzer azimuths only through their sum
φ = φ1 + φ2 + φ3, and on the outcomes only through their parity: outcome
triples with an odd number of "yes" results carry joint weight
(1 - cos φ)/8, the others (1 + cos φ)/8.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tables import NORM_TOL, ProbTable, bit_labels, frozen_array, scalar_or_array

_PARITY = np.indices((2, 2, 2)).sum(axis=0) % 2


@dataclass(frozen=True)
class AngleTriple:
    phi1: float
    phi2: float
    phi3: float

    @property
    def phi(self) -> float:
        return self.phi1 + self.phi2 + self.phi3

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi1, self.phi2, self.phi3)


def as_triple(angles) -> AngleTriple:
    return angles if isinstance(angles, AngleTriple) else AngleTriple(*angles)


def odd_weight(phi):
    """(1 - cos φ)/2, evaluated as sin²(φ/2) for accuracy near φ = 0."""
    return scalar_or_array(np.sin(np.asarray(phi, dtype=float) / 2.0) ** 2)


def even_weight(phi):
    """(1 + cos φ)/2."""
    return scalar_or_array(np.cos(np.asarray(phi, dtype=float) / 2.0) ** 2)


@dataclass(frozen=True)
class GhzCondMatrix:
    """``table[i, j, k] = P(i | j, k)``; each of the four (j, k) columns sums to 1."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (2, 2, 2):
            raise ValueError(f"expected a 2x2x2 table, got shape {t.shape}")
        if np.max(np.abs(t.sum(axis=0) - 1.0)) > NORM_TOL:
            raise ValueError("conditional columns must sum to 1")
        object.__setattr__(self, "table", frozen_array(t))

    def __getitem__(self, idx) -> float:
        return float(self.table[idx])


@dataclass(frozen=True)
class GhzJointDist:
    """``table[i, j, k] = p(λ_a = i, λ_b = j, λ_c = k)``."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (2, 2, 2):
            raise ValueError(f"expected a 2x2x2 table, got shape {t.shape}")
        if t.min() < -1e-12 or abs(t.sum() - 1.0) > NORM_TOL:
            raise ValueError("joint distribution must be nonnegative and normalized")
        object.__setattr__(self, "table", frozen_array(np.clip(t, 0.0, None)))

    def __getitem__(self, idx) -> float:
        return float(self.table[idx])

    def as_probtable(self) -> ProbTable:
        return ProbTable(self.table.ravel(), bit_labels(3))


def ghz_transmission(angles):
    """p(1,1,1) = (1 - cos φ)/8."""
    return odd_weight(as_triple(angles).phi) / 4.0


def ghz_transmission_sum(phi):
    """Vectorized p(1,1,1) as a function of the angle sum alone."""
    return odd_weight(phi) / 4.0


def ghz_conditionals(angles) -> GhzCondMatrix:
    phi = as_triple(angles).phi
    table = np.where(_PARITY == 1, odd_weight(phi), even_weight(phi))
    return GhzCondMatrix(table)


def ghz_full_distribution(angles) -> GhzJointDist:
    # chain rule with P(j|k) = P(k) = 1/2
    return GhzJointDist(ghz_conditionals(angles).table / 4.0)


def ghz_pair_marginals(angles) -> dict[tuple[int, ...], ProbTable]:
    """Every single and pairwise marginal, keyed by the particle indices kept."""
    full = ghz_full_distribution(angles).table
    out = {}
    for keep in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]:
        drop = tuple(ax for ax in range(3) if ax not in keep)
        out[keep] = ProbTable.from_array(full.sum(axis=drop))
    return out


def markov_violation(angles) -> float:
    """max |P(i|j,k) - P(i|j) P(j|k)| over all outcome triples."""
    p = ghz_full_distribution(angles).table
    p_jk = p.sum(axis=0)
    p_ij = p.sum(axis=2)
    p_j = p_ij.sum(axis=0)
    p_k = p_jk.sum(axis=0)
    cond_i_jk = p / p_jk[np.newaxis]
    cond_i_j = p_ij / p_j[np.newaxis]
    cond_j_k = p_jk / p_k[np.newaxis]
    markov = cond_i_j[:, :, np.newaxis] * cond_j_k[np.newaxis, :, :]
    return float(np.max(np.abs(cond_i_jk - markov)))
