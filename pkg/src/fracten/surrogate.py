"""Shuffle surrogates.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014), chosen because
it is tiny, fully specified by three constants and reproducible in any
language. Realization ``i`` of a batch seeded with ``base_seed`` is driven by
a fresh SplitMix64 stream whose seed is the ``i``-th output (0-based) of
``SplitMix64(base_seed)``; that output is computable directly from the index,
so realizations can run in any order or in parallel.

A shuffle is a Fisher-Yates pass from the last position down, drawing each
index uniformly from [0, i] with Lemire's multiply-and-reject method.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .entropy import EntropyParams, sample_entropy, tolerance
from .ingest import ArrayLike, as_array
from .mfdfa import MfdfaParams, mfdfa, spectrum

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return _mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        m = self.next() * bound
        low = m & MASK64
        if low < bound:
            threshold = (1 << 64) % bound
            while low < threshold:
                m = self.next() * bound
                low = m & MASK64
        return m >> 64


def realization_seed(base_seed: int, index: int) -> int:
    """The index-th output of SplitMix64(base_seed)."""
    return _mix64((base_seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def permutation(n: int, seed: int) -> np.ndarray:
    rng = SplitMix64(seed)
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm, dtype=np.intp)


def shuffle(x: ArrayLike, seed: int) -> np.ndarray:
    """Uniformly random permutation of the samples of x, fixed by ``seed``."""
    x = as_array(x)
    return x[permutation(x.size, seed)]


@dataclass(frozen=True)
class ShuffleConfig:
    n_shuffles: int = 100
    base_seed: int = 0
    workers: int = 1  # process pool size; results do not depend on it

    def __post_init__(self):
        if self.n_shuffles < 1:
            raise ValueError("n_shuffles must be positive")
        if not 0 <= self.base_seed <= MASK64:
            raise ValueError("base_seed must be an unsigned 64-bit integer")

    def seeds(self) -> List[int]:
        return [realization_seed(self.base_seed, i) for i in range(self.n_shuffles)]


@dataclass(frozen=True)
class SurrogateReport:
    metric_name: str
    original_value: Optional[float]
    shuffled_values: List[Optional[float]]
    seeds: List[int] = field(repr=False, default_factory=list)

    @property
    def defined_values(self) -> np.ndarray:
        return np.array([v for v in self.shuffled_values if v is not None], dtype=float)

    @property
    def undefined_count(self) -> int:
        return sum(v is None for v in self.shuffled_values)

    @property
    def shuffled_mean(self) -> Optional[float]:
        d = self.defined_values
        return float(d.mean()) if d.size else None

    @property
    def shuffled_std(self) -> Optional[float]:
        d = self.defined_values
        return float(d.std()) if d.size else None

    def z_score(self) -> Optional[float]:
        """(original - shuffled mean) / shuffled std."""
        if self.original_value is None or self.shuffled_std in (None, 0.0):
            return None
        return (self.original_value - self.shuffled_mean) / self.shuffled_std

    def rows(self):
        """(realization, seed, value) rows."""
        return [(i, s, v) for i, (s, v) in enumerate(zip(self.seeds, self.shuffled_values))]

    def to_dict(self):
        return {
            "metric_name": self.metric_name,
            "original_value": self.original_value,
            "shuffled_mean": self.shuffled_mean,
            "shuffled_std": self.shuffled_std,
            "n_shuffles": len(self.shuffled_values),
            "undefined_count": self.undefined_count,
            "z_score": self.z_score(),
            "shuffled_values": list(self.shuffled_values),
        }


class _SampEnTask:
    def __init__(self, x, m, r):
        self.x, self.m, self.r = x, m, r

    def __call__(self, seed):
        return sample_entropy(shuffle(self.x, seed), self.m, self.r)


class _WidthTask:
    def __init__(self, x, params):
        self.x, self.params = x, params

    def __call__(self, seed):
        return spectrum(mfdfa(shuffle(self.x, seed), self.params)).width


def _run(task, seeds, workers):
    if workers <= 1:
        return [task(s) for s in seeds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, seeds, chunksize=max(1, len(seeds) // (4 * workers))))


def entropy_shuffle_test(x: ArrayLike, params: EntropyParams = EntropyParams(),
                         cfg: ShuffleConfig = ShuffleConfig()) -> SurrogateReport:
    """Sample entropy (scale 1) of x against its shuffle surrogates.

    The tolerance is taken from x once; shuffling leaves the standard
    deviation unchanged, so the surrogates share it.
    """
    x = as_array(x)
    r = tolerance(x, params.r_fraction)
    seeds = cfg.seeds()
    return SurrogateReport("sampen", sample_entropy(x, params.m, r),
                           _run(_SampEnTask(x, params.m, r), seeds, cfg.workers), seeds)


def spectrum_shuffle_test(x: ArrayLike, params: MfdfaParams = MfdfaParams(),
                          cfg: ShuffleConfig = ShuffleConfig()) -> SurrogateReport:
    """Singularity spectrum width of x against its shuffle surrogates."""
    x = as_array(x)
    seeds = cfg.seeds()
    original = spectrum(mfdfa(x, params)).width
    return SurrogateReport("mfdfa-width", original,
                           _run(_WidthTask(x, params), seeds, cfg.workers), seeds)
