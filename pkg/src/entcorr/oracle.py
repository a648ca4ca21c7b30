"""Brute-force Hilbert-space evaluation of the EPR and GHZ probabilities.

Basis conventions: single-spin states are ordered m = -s, ..., +s (index
``k`` holds ``m = -s + k``). Two-particle states are flattened row-major with
particle ``a`` slowest; three-qubit states likewise with particle 1 slowest,
so index 0 is |-,-,-> and index 7 is |+,+,+>.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .epr import JointDist2, SpinMagnitude, as_spin, canonical_angle
from .tables import ProbTable, bit_labels

# dim 51 per particle, 2601 for the pair
ORACLE_MAX_TWICE_S = 50


@dataclass(frozen=True)
class Direction:
    """Analyzer orientation given by the rotation parameters ``(theta, phi)``.

    ``theta = 0`` leaves the analyzer on |m=-s⟩. The analyzer axis, i.e. the
    Bloch vector of the rotated state, is ``vector``:
    (sin θ cos φ, sin θ sin φ, -cos θ).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not -1e-12 <= theta <= math.pi + 1e-12:
            raise ValueError(f"theta must lie in [0, π], got {theta}")
        object.__setattr__(self, "theta", min(max(theta, 0.0), math.pi))
        object.__setattr__(self, "phi", canonical_angle(self.phi))

    @classmethod
    def from_vector(cls, v) -> "Direction":
        x, y, z = np.asarray(v, dtype=float) / np.linalg.norm(v)
        return cls(math.acos(min(max(-z, -1.0), 1.0)), math.atan2(y, x))

    @classmethod
    def in_plane(cls, angle: float) -> "Direction":
        """Analyzer axis (cos angle, sin angle, 0)."""
        return cls(math.pi / 2, angle)

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), -math.cos(self.theta)])

    def angle_to(self, other: "Direction") -> float:
        c = float(np.dot(self.vector, other.vector))
        return math.acos(min(max(c, -1.0), 1.0))


def _check_ceiling(spin: SpinMagnitude):
    if spin.twice_s > ORACLE_MAX_TWICE_S:
        raise ValueError(f"oracle limited to s <= {ORACLE_MAX_TWICE_S / 2}, got s = {spin}")


def spin_z(s) -> np.ndarray:
    spin = as_spin(s)
    return np.diag(np.arange(spin.dim) - spin.s).astype(complex)


def spin_ladder(s) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(S+, S-)`` with ⟨m+1|S+|m⟩ = sqrt(s(s+1) - m(m+1))."""
    spin = as_spin(s)
    m = np.arange(spin.dim - 1) - spin.s
    s_plus = np.diag(np.sqrt(spin.s * (spin.s + 1) - m * (m + 1)), k=-1).astype(complex)
    return s_plus, s_plus.conj().T


def rotated_state(s, direction: Direction) -> np.ndarray:
    """exp(τ S+ - τ* S-) |m=-s⟩ with τ = (θ/2) e^{-iφ}.

    The generator is anti-Hermitian, so it is exponentiated through the
    eigendecomposition of the Hermitian matrix ``i(τ S+ - τ* S-)``.
    """
    spin = as_spin(s)
    _check_ceiling(spin)
    s_plus, s_minus = spin_ladder(spin)
    tau = 0.5 * direction.theta * np.exp(-1j * direction.phi)
    gen = tau * s_plus - np.conj(tau) * s_minus
    w, v = np.linalg.eigh(1j * gen)
    lowest = np.zeros(spin.dim, dtype=complex)
    lowest[0] = 1.0
    return v @ (np.exp(-1j * w) * (v.conj().T @ lowest))


def rotated_projector(s, direction: Direction) -> np.ndarray:
    ket = rotated_state(s, direction)
    return np.outer(ket, ket.conj())


def singlet_state(s) -> np.ndarray:
    spin = as_spin(s)
    d = spin.dim
    psi = np.zeros((d, d), dtype=complex)
    for k in range(d):
        # m = -s + k, so s + m = k
        psi[k, d - 1 - k] = (-1) ** k / math.sqrt(d)
    return psi.ravel()


def _two_outcome_projectors(proj: np.ndarray) -> np.ndarray:
    """Stack ``[I - P, P]`` so that index λ selects Π(λ)."""
    return np.stack([np.eye(proj.shape[0]) - proj, proj])


def epr_joint_oracle(s, a: Direction, b: Direction) -> JointDist2:
    """All four ⟨ψ|Π_a(λ_a) ⊗ Π_b(λ_b)|ψ⟩ for the spin-s singlet."""
    spin = as_spin(s)
    d = spin.dim
    psi = singlet_state(spin).reshape(d, d)
    pa = _two_outcome_projectors(rotated_projector(spin, a))
    pb = _two_outcome_projectors(rotated_projector(spin, b))
    # ⟨ψ|A⊗B|ψ⟩ = Σ conj(ψ_ij) A_ik B_jl ψ_kl
    table = np.einsum("ij,xik,yjl,kl->xy", psi.conj(), pa, pb, psi).real
    return JointDist2(table)


def ghz_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[7] = 1 / math.sqrt(2)  # |+,+,+>
    psi[0] = -1 / math.sqrt(2)  # |-,-,->
    return psi


@functools.lru_cache(maxsize=4096)
def _qubit_projector_pair(phi: float) -> np.ndarray:
    pair = _two_outcome_projectors(rotated_projector(SpinMagnitude(1), Direction.in_plane(phi)))
    pair.setflags(write=False)
    return pair


def ghz_joint_oracle(phi1: float, phi2: float, phi3: float) -> ProbTable:
    """Eight-outcome distribution for in-plane analyzers at azimuths φ1, φ2, φ3."""
    psi = ghz_state().reshape(2, 2, 2)
    p1, p2, p3 = (_qubit_projector_pair(canonical_angle(phi)) for phi in (phi1, phi2, phi3))
    out = np.einsum("xiI,IJK->xiJK", p1, psi)
    out = np.einsum("yjJ,xiJK->xyijK", p2, out)
    out = np.einsum("zkK,xyijK->xyzijk", p3, out)
    table = np.einsum("ijk,xyzijk->xyz", psi.conj(), out).real
    return ProbTable(table.ravel(), bit_labels(3))
