"""Sample entropy, multiscale (MSE) and refined composite multiscale (RCMSE)
sample entropy.

Undefined entropies (a zero match count) are returned as ``None``, never as
NaN or infinity.

Template convention: both the m- and (m+1)-dimensional templates start at
indices 0..N-m-1, so a constant series has entropy exactly 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DegenerateSeries, InvalidParams, TooShort
from .ingest import ArrayLike, as_array

# upper bound on elements in one pairwise distance block
_BLOCK_ELEMS = 1 << 21
# template count above which the sorted sweep beats dense blocks
_SWEEP_MIN = 300


class MatchCounts(NamedTuple):
    n_m: int
    n_m1: int


@dataclass(frozen=True)
class EntropyParams:
    m: int = 3
    r_fraction: float = 0.15
    tau_max: int = 100

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParams(f"m must be >= 1, got {self.m}")
        if not 0 < self.r_fraction < 1:
            raise InvalidParams(f"r_fraction must lie in (0, 1), got {self.r_fraction}")
        if self.tau_max < 1:
            raise InvalidParams(f"tau_max must be >= 1, got {self.tau_max}")

    def check_length(self, n: int):
        if n // self.tau_max < self.m + 2:
            raise TooShort(
                f"series of length {n} leaves {n // self.tau_max} samples at "
                f"scale {self.tau_max}; need at least m + 2 = {self.m + 2}"
            )


@dataclass(frozen=True)
class EntropyProfile:
    scales: np.ndarray
    entropy: List[Optional[float]]
    counts: List[MatchCounts]
    method: str
    r: float

    @property
    def complexity_index(self) -> float:
        return float(sum(e for e in self.entropy if e is not None))

    @property
    def undefined_count(self) -> int:
        return sum(e is None for e in self.entropy)

    @property
    def defined(self) -> np.ndarray:
        return np.array([e is not None for e in self.entropy])

    def rows(self):
        """(scale, entropy, defined) rows; undefined entropies are ``None``."""
        return [(int(s), e, e is not None) for s, e in zip(self.scales, self.entropy)]

    def to_dict(self):
        return {
            "method": self.method,
            "r": self.r,
            "scales": self.scales.tolist(),
            "entropy": list(self.entropy),
            "n_m": [c.n_m for c in self.counts],
            "n_m1": [c.n_m1 for c in self.counts],
            "complexity_index": self.complexity_index,
            "undefined_count": self.undefined_count,
        }


def _count_matches(x: np.ndarray, m: int, r: float) -> MatchCounts:
    """Unordered template pairs within Chebyshev distance r, for m and m+1."""
    n_t = x.size - m
    if n_t < 2:
        return MatchCounts(0, 0)
    if n_t <= _SWEEP_MIN:
        return _count_dense(x, m, r)
    return _count_sweep(x, m, r)



def _count_sweep(x: np.ndarray, m: int, r: float) -> MatchCounts:
    """Templates sorted by first coordinate; pairs are visited by rank gap d
    and a row drops out once its gap-d neighbour is further than r away."""
    n_t = x.size - m
    templates = sliding_window_view(x, m + 1)
    S = templates[np.argsort(templates[:, 0], kind="stable")]
    cols = [np.ascontiguousarray(S[:, k]) for k in range(m + 1)]
    first = cols[0]
    n_m = n_m1 = 0
    i = np.arange(n_t - 1)
    d = 1
    while i.size:
        i = i[i + d < n_t]
        j = i + d
        near = first[j] - first[i] <= r
        i, j = i[near], j[near]
        ok = np.ones(i.size, dtype=bool)
        for k in range(1, m):
            ok &= np.abs(cols[k][j] - cols[k][i]) <= r
        n_m += int(np.count_nonzero(ok))
        ok &= np.abs(cols[m][j] - cols[m][i]) <= r
        n_m1 += int(np.count_nonzero(ok))
        d += 1
    return MatchCounts(n_m, n_m1)


def _count_dense(x: np.ndarray, m: int, r: float) -> MatchCounts:
    """Strict upper triangle of the pairwise distance matrix, in row blocks."""
    n_t = x.size - m
    templates = sliding_window_view(x, m + 1)
    n_m = n_m1 = 0
    block = max(1, _BLOCK_ELEMS // n_t)
    for i0 in range(0, n_t - 1, block):
        i1 = min(i0 + block, n_t - 1)
        rows = templates[i0:i1]
        cols = templates[i0 + 1 :]
        # pair (i0 + a, i0 + 1 + b) is above the diagonal iff b >= a
        upper = np.arange(cols.shape[0])[None, :] >= np.arange(rows.shape[0])[:, None]
        dist = np.abs(rows[:, None, 0] - cols[None, :, 0])
        for k in range(1, m):
            np.maximum(dist, np.abs(rows[:, None, k] - cols[None, :, k]), out=dist)
        hit = (dist <= r) & upper
        n_m += int(np.count_nonzero(hit))
        hit &= np.abs(rows[:, None, m] - cols[None, :, m]) <= r
        n_m1 += int(np.count_nonzero(hit))
    return MatchCounts(n_m, n_m1)


def match_counts(x: ArrayLike, m: int, r: float) -> MatchCounts:
    x = as_array(x)
    if x.size < m + 2:
        raise TooShort(f"need at least m + 2 = {m + 2} samples, got {x.size}")
    if not r > 0:
        raise InvalidParams(f"tolerance must be positive, got {r}")
    return _count_matches(x, m, r)


def _entropy(c: MatchCounts) -> Optional[float]:
    if c.n_m == 0 or c.n_m1 == 0:
        return None
    return -math.log(c.n_m1 / c.n_m)


def sample_entropy(x: ArrayLike, m: int = 3, r: Optional[float] = None,
                   r_fraction: float = 0.15) -> Optional[float]:
    """-ln(n_{m+1} / n_m), or ``None`` when either count is zero.

    ``r`` defaults to ``r_fraction`` times the population standard deviation.
    """
    x = as_array(x)
    if r is None:
        r = tolerance(x, r_fraction)
    return _entropy(match_counts(x, m, r))


def tolerance(x: ArrayLike, r_fraction: float) -> float:
    sigma = float(np.std(as_array(x)))
    if sigma == 0:
        raise DegenerateSeries("cannot derive a tolerance from a constant series")
    return r_fraction * sigma


def coarse_grain(x: ArrayLike, tau: int) -> np.ndarray:
    """Means of consecutive non-overlapping windows of length tau."""
    return rcmse_coarse_grain(x, tau, 1)


def rcmse_coarse_grain(x: ArrayLike, tau: int, k: int) -> np.ndarray:
    """Window means starting at 1-based offset k; incomplete windows dropped."""
    x = as_array(x)
    if tau < 1 or not 1 <= k <= tau:
        raise InvalidParams(f"need tau >= 1 and 1 <= k <= tau, got tau={tau}, k={k}")
    n_win = (x.size - k + 1) // tau
    if n_win < 1:
        raise TooShort(f"series of length {x.size} too short for scale {tau}")
    if tau == 1:
        return x.copy()
    return x[k - 1 : k - 1 + n_win * tau].reshape(n_win, tau).mean(axis=1)


def _multiscale(x, params, r, offsets_for, method):
    x = as_array(x)
    params.check_length(x.size)
    if r is None:
        r = tolerance(x, params.r_fraction)
    scales = np.arange(1, params.tau_max + 1)
    counts = []
    for tau in scales:
        n_m = n_m1 = 0
        for k in offsets_for(tau):
            c = _count_matches(rcmse_coarse_grain(x, tau, k), params.m, r)
            n_m += c.n_m
            n_m1 += c.n_m1
        counts.append(MatchCounts(n_m, n_m1))
    return EntropyProfile(scales, [_entropy(c) for c in counts], counts, method, r)


def rcmse(x: ArrayLike, params: EntropyParams = EntropyParams(),
          r: Optional[float] = None) -> EntropyProfile:
    """Refined composite multiscale sample entropy.

    At scale tau the match counts of all tau offset coarse-grainings are pooled
    before taking the log ratio. The tolerance is computed once from the
    original series and held fixed across scales.
    """
    return _multiscale(x, params, r, lambda tau: range(1, tau + 1), "rcmse")


def mse(x: ArrayLike, params: EntropyParams = EntropyParams(),
        r: Optional[float] = None) -> EntropyProfile:
    """Classic multiscale entropy: one coarse-graining (offset 1) per scale."""
    return _multiscale(x, params, r, lambda tau: (1,), "mse")
