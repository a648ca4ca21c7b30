"""Finite discrete distributions shared by the EPR, GHZ and entropy modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

# Construction-time check; the tighter 1e-12 invariants live in the tests.
NORM_TOL = 1e-9


def frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def scalar_or_array(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def bit_labels(width: int) -> tuple[tuple[int, ...], ...]:
    """All outcome tuples of ``width`` bits, first bit slowest."""
    return tuple(itertools.product((0, 1), repeat=width))


@dataclass(frozen=True)
class ProbTable:
    """Normalized nonnegative probability vector with outcome labels."""

    probs: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if p.size == 0:
            raise ValueError("empty probability table")
        if np.any(~np.isfinite(p)) or p.min() < -1e-12:
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probs", frozen_array(np.clip(p, 0.0, None)))
        labels = tuple(self.labels) if self.labels else tuple(range(p.size))
        if len(labels) != p.size:
            raise ValueError("label count does not match probability count")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, label) -> float:
        return float(self.probs[self.labels.index(label)])

    def as_dict(self) -> dict:
        return {lab: float(p) for lab, p in zip(self.labels, self.probs)}

    @classmethod
    def from_array(cls, table) -> "ProbTable":
        """Flatten an n-dimensional table of bits, labeling cells by index tuple."""
        arr = np.asarray(table, dtype=float)
        labels = tuple(itertools.product(*(range(n) for n in arr.shape)))
        return cls(arr.ravel(), labels)
