"""Seeded Monte Carlo streams of EPR pairs, GHZ triples and a local model.

Samples are produced in fixed-size blocks. Block ``k`` of a stream draws
from its own generator keyed by ``(seed, stream_id, k)``, so the output
is the same whatever the number of workers.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import epr, ghz
from .oracle import Direction
from .tables import bit_labels, frozen_array

BLOCK_SIZE = 1 << 16
_U64 = 2**64


@dataclass(frozen=True)
class SeedSpec:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self, *key: int) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id), *key))
        return np.random.Generator(np.random.PCG64(seq))


def _as_seed(seed) -> SeedSpec:
    return seed if isinstance(seed, SeedSpec) else SeedSpec(int(seed))


def _blocked(n: int, seed: SeedSpec, width: int, fill: Callable, workers: int = 1, key=()) -> np.ndarray:
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    sizes = [min(BLOCK_SIZE, n - start) for start in range(0, n, BLOCK_SIZE)]

    def run(k):
        return fill(seed.generator(*key, k), sizes[k])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(run, range(len(sizes))))
    else:
        blocks = [run(k) for k in range(len(sizes))]
    out = np.concatenate(blocks).astype(np.uint8).reshape(n, width)
    return out


def inverse_cdf(u: np.ndarray, probs) -> np.ndarray:
    """Map uniforms on [0, 1) to outcome indices of a finite table."""
    cdf = np.cumsum(np.asarray(probs, dtype=float))
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)


def sample_epr(s, alpha: float, n: int, seed, workers: int = 1) -> np.ndarray:
    """``(n, 2)`` array of (λ_a, λ_b): λ_b from the marginal, λ_a from column λ_b."""
    marg = epr.epr_marginals(s).as_array()
    cond = epr.epr_conditional(s, alpha).table

    def fill(rng, size):
        u = rng.random((size, 2))
        lam_b = inverse_cdf(u[:, 0], marg)
        lam_a = np.where(lam_b == 1, inverse_cdf(u[:, 1], cond[:, 1]), inverse_cdf(u[:, 1], cond[:, 0]))
        return np.column_stack([lam_a, lam_b])

    return _blocked(n, _as_seed(seed), 2, fill, workers)


def sample_ghz(angles, n: int, seed, workers: int = 1) -> np.ndarray:
    """``(n, 3)`` array of (λ_a, λ_b, λ_c); (λ_b, λ_c) uniform, λ_a from its column."""
    cond = ghz.ghz_conditionals(angles).table

    def fill(rng, size):
        u = rng.random((size, 2))
        pair = inverse_cdf(u[:, 0], np.full(4, 0.25))
        lam_b, lam_c = pair // 2, pair % 2
        # two-outcome inverse CDF per column: λ_a = 1 iff u >= P(0 | λ_b, λ_c)
        lam_a = (u[:, 1] >= cond[0, lam_b, lam_c]).astype(np.int64)
        return np.column_stack([lam_a, lam_b, lam_c])

    return _blocked(n, _as_seed(seed), 3, fill, workers)


def _unit(d) -> np.ndarray:
    if isinstance(d, Direction):
        return d.vector
    arr = np.asarray(d, dtype=float)
    if arr.ndim == 0:
        return np.array([math.cos(arr), math.sin(arr), 0.0])
    return arr / np.linalg.norm(arr)


@dataclass(frozen=True)
class LhvModel:
    """Shared hidden unit vector λ, uniform on the sphere.

    Each detector fires when ``d·λ < threshold``; the threshold makes the
    single-detector rate 1/(2s+1).
    """

    spin: epr.SpinMagnitude

    @property
    def threshold(self) -> float:
        n = self.spin.twice_s
        return (1 - n) / (1 + n)

    def transmit(self, direction, lam: np.ndarray) -> np.ndarray:
        return (lam @ _unit(direction) < self.threshold).astype(np.int64)

    @staticmethod
    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        u = rng.random((size, 2))
        z = 2.0 * u[:, 0] - 1.0
        phi = 2.0 * math.pi * u[:, 1]
        r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sample_lhv_epr(model: LhvModel, a, b, n: int, seed, workers: int = 1, key=()) -> np.ndarray:
    def fill(rng, size):
        lam = model.draw(rng, size)
        return np.column_stack([model.transmit(a, lam), model.transmit(b, lam)])

    return _blocked(n, _as_seed(seed), 2, fill, workers, key=key)


@dataclass(frozen=True)
class EmpiricalEstimate:
    counts: np.ndarray
    n: int
    labels: tuple

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.sum() != self.n:
            raise ValueError("counts must sum to n")
        object.__setattr__(self, "counts", frozen_array(c, dtype=np.int64))

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "EmpiricalEstimate":
        samples = np.asarray(samples)
        width = samples.shape[1]
        codes = samples.astype(np.int64) @ (1 << np.arange(width - 1, -1, -1))
        counts = np.bincount(codes, minlength=1 << width)
        return cls(counts, int(samples.shape[0]), bit_labels(width))

    @property
    def freq(self) -> np.ndarray:
        return self.counts / self.n

    @property
    def stderr(self) -> np.ndarray:
        f = self.freq
        return np.sqrt(f * (1.0 - f) / self.n)

    def table(self) -> np.ndarray:
        """Frequencies reshaped to ``(2,) * width``."""
        width = len(self.labels[0])
        return self.freq.reshape((2,) * width)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "labels": ["".join(map(str, lab)) for lab in self.labels],
            "counts": self.counts.tolist(),
            "freq": self.freq.tolist(),
            "stderr": self.stderr.tolist(),
        }


def empirical_entropy(est: EmpiricalEstimate) -> float:
    """Plug-in entropy of the observed frequencies, in bits (biased low)."""
    f = est.freq[est.freq > 0]
    return float(-np.sum(f * np.log2(f)))


def plugin_bias(est: EmpiricalEstimate) -> float:
    """Leading-order downward bias of the plug-in entropy, (K-1)/(2 n ln 2)."""
    return (len(est.counts) - 1) / (2 * est.n * math.log(2))


def sigma_deltas(est: EmpiricalEstimate, expected) -> np.ndarray:
    """(freq - expected) in units of the larger of the empirical and model standard errors."""
    expected = np.asarray(expected, dtype=float).ravel()
    sigma = np.maximum(est.stderr, np.sqrt(expected * (1.0 - expected) / est.n))
    delta = est.freq - expected
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(sigma > 0, delta / np.where(sigma > 0, sigma, 1.0), np.where(delta == 0, 0.0, np.inf))


def lhv_bell_functional(model: LhvModel, a, a_p, b, b_p, n: int, seed, workers: int = 1) -> tuple[float, float]:
    """Empirical p(a;b) + p(a';b) - p(a;b') + p(a';b') - p(a) - p(b) and its standard error.

    Each analyzer pair is a separate run of ``n`` hidden-variable draws; the
    single rates come from the (a, b) run.
    """
    seed = _as_seed(seed)
    value = 0.0
    var = 0.0
    for k, (x, y, sign) in enumerate([(a, b, 1), (a_p, b, 1), (a, b_p, -1), (a_p, b_p, 1)]):
        pairs = sample_lhv_epr(model, x, y, n, seed, workers, key=(k,)).astype(float)
        term = sign * pairs[:, 0] * pairs[:, 1]
        if k == 0:
            term = term - pairs[:, 0] - pairs[:, 1]
        value += term.mean()
        var += term.var(ddof=1) / n
    return float(value), math.sqrt(var)


def write_samples_csv(path, samples: np.ndarray, columns=None) -> None:
    samples = np.asarray(samples)
    columns = columns or ["a", "b", "c"][: samples.shape[1]]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", *columns])
        for i, row in enumerate(samples.tolist()):
            w.writerow([i, *row])
