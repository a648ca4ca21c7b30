"""Closed-form statistics of two spin-s particles in the singlet state.

Outcomes are labeled 1 ("yes", the polarizer transmits) and 0 ("no").
All tables are indexed ``[i, j]`` with ``i`` the outcome at analyzer ``a``
and ``j`` the outcome at analyzer ``b`` (the conditioning side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .tables import NORM_TOL, ProbTable, frozen_array, scalar_or_array

TWO_PI = 2.0 * math.pi

# Above this exponent sin^(4s) is evaluated in log space.
_DIRECT_POWER_MAX = 64


@dataclass(frozen=True, order=True)
class SpinMagnitude:
    """Spin ``s`` stored as the integer ``2s`` so that only half-integers exist."""

    twice_s: int

    def __post_init__(self):
        if isinstance(self.twice_s, bool) or not isinstance(self.twice_s, (int, np.integer)):
            raise TypeError(f"twice_s must be an integer, got {self.twice_s!r}")
        if self.twice_s < 1:
            raise ValueError(f"twice_s must be >= 1, got {self.twice_s}")
        object.__setattr__(self, "twice_s", int(self.twice_s))

    @classmethod
    def from_s(cls, s) -> "SpinMagnitude":
        twice = Fraction(s).limit_denominator(2) * 2
        if twice.denominator != 1 or abs(float(twice) - 2 * float(s)) > 1e-12:
            raise ValueError(f"spin must be a positive half-integer, got {s!r}")
        return cls(int(twice))

    @property
    def s(self) -> float:
        return self.twice_s / 2

    @property
    def dim(self) -> int:
        return self.twice_s + 1

    def __str__(self) -> str:
        return str(self.twice_s // 2) if self.twice_s % 2 == 0 else f"{self.twice_s}/2"


def as_spin(s) -> SpinMagnitude:
    return s if isinstance(s, SpinMagnitude) else SpinMagnitude(s)


def canonical_angle(alpha: float) -> float:
    """Map an angle in radians onto [0, 2π)."""
    a = float(alpha) % TWO_PI
    return 0.0 if a == TWO_PI else a


def sin_power(s, alpha):
    """``sin(α/2)^(4s)``; accepts scalar or array angles.

    4s is always even, so this is ``(sin²(α/2))^(2s)`` and never negative.
    """
    twice_s = as_spin(s).twice_s
    x = np.sin(np.asarray(alpha, dtype=float) / 2.0) ** 2
    if 2 * twice_s <= _DIRECT_POWER_MAX:
        out = x**twice_s
    else:
        with np.errstate(divide="ignore"):
            out = np.where(x > 0.0, np.exp(twice_s * np.log(np.where(x > 0.0, x, 1.0))), 0.0)
    return scalar_or_array(out)


@dataclass(frozen=True)
class BinaryMarginal:
    p0: float
    p1: float

    def __post_init__(self):
        if min(self.p0, self.p1) < 0 or abs(self.p0 + self.p1 - 1.0) > NORM_TOL:
            raise ValueError(f"invalid binary marginal ({self.p0}, {self.p1})")

    def __getitem__(self, outcome: int) -> float:
        return (self.p0, self.p1)[outcome]

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1])


@dataclass(frozen=True)
class CondMatrix2:
    """Column-stochastic table ``table[i, j] = P(i | j)``."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (2, 2):
            raise ValueError(f"expected a 2x2 table, got shape {t.shape}")
        if t.min() < -1e-12 or t.max() > 1 + 1e-12:
            raise ValueError("conditional probabilities must lie in [0, 1]")
        if np.max(np.abs(t.sum(axis=0) - 1.0)) > NORM_TOL:
            raise ValueError("columns of a conditional matrix must sum to 1")
        object.__setattr__(self, "table", frozen_array(t))

    def __getitem__(self, idx) -> float:
        return float(self.table[idx])


@dataclass(frozen=True)
class JointDist2:
    """Joint outcome table ``table[i, j] = p(λ_a = i, λ_b = j)``."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (2, 2):
            raise ValueError(f"expected a 2x2 table, got shape {t.shape}")
        if t.min() < -1e-12 or abs(t.sum() - 1.0) > NORM_TOL:
            raise ValueError("joint distribution must be nonnegative and normalized")
        object.__setattr__(self, "table", frozen_array(np.clip(t, 0.0, None)))

    def __getitem__(self, idx) -> float:
        return float(self.table[idx])

    def marginal_a(self) -> np.ndarray:
        return self.table.sum(axis=1)

    def marginal_b(self) -> np.ndarray:
        return self.table.sum(axis=0)

    def as_probtable(self) -> ProbTable:
        return ProbTable.from_array(self.table)


def epr_marginals(s) -> BinaryMarginal:
    """Single-analyzer outcome probabilities; the same for every direction."""
    twice_s = as_spin(s).twice_s
    return BinaryMarginal(twice_s / (twice_s + 1), 1 / (twice_s + 1))


def epr_transmission(s, alpha):
    """Probability that both polarizers transmit, ``sin^(4s)(α/2) / (2s+1)``."""
    twice_s = as_spin(s).twice_s
    return scalar_or_array(np.asarray(sin_power(s, alpha)) / (twice_s + 1))


def epr_conditional(s, alpha: float) -> CondMatrix2:
    twice_s = as_spin(s).twice_s
    x = sin_power(s, canonical_angle(alpha))
    p00 = (twice_s - 1 + x) / twice_s
    p01 = 1.0 - x
    # P(1|0) directly rather than 1 - P(0|0), which cancels for large s
    p10 = (1.0 - x) / twice_s
    return CondMatrix2(np.array([[p00, p01], [p10, x]]))


def epr_joint(s, alpha: float) -> JointDist2:
    cond = epr_conditional(s, alpha).table
    marg = epr_marginals(s).as_array()
    return JointDist2(cond * marg[np.newaxis, :])


def classical_limit_conditional(alpha: float) -> CondMatrix2:
    """The s → ∞ conditional matrix; discontinuous at α = π by construction."""
    if canonical_angle(alpha) == math.pi:
        return CondMatrix2(np.eye(2))
    return CondMatrix2(np.array([[1.0, 1.0], [0.0, 0.0]]))
