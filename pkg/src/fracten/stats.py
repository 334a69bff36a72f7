"""Moment statistics and histogram density estimates of return series.

All moments use the population convention (divide by n).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateSeries, TooShort
from .ingest import ArrayLike, as_array


@dataclass(frozen=True)
class DistributionStats:
    mean: float
    std_dev: float
    skewness: float
    ex_kurtosis: float
    n: int

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Histogram:
    bin_edges: np.ndarray
    densities: np.ndarray

    def rows(self):
        """(bin_left, bin_right, density) triples."""
        e = self.bin_edges
        return list(zip(e[:-1].tolist(), e[1:].tolist(), self.densities.tolist()))


def central_moment(x: ArrayLike, k: int) -> float:
    x = as_array(x)
    if x.size < 1:
        raise TooShort("empty series")
    if k not in (2, 3, 4):
        raise ValueError(f"moment order must be 2, 3 or 4, got {k}")
    d = x - x.mean()
    return float(np.mean(d**k))


def distribution_stats(x: ArrayLike) -> DistributionStats:
    x = as_array(x)
    if x.size < 2:
        raise TooShort("need at least two samples")
    sigma = float(np.sqrt(central_moment(x, 2)))
    if sigma == 0:
        raise DegenerateSeries("standard deviation is zero")
    return DistributionStats(
        mean=float(x.mean()),
        std_dev=sigma,
        skewness=central_moment(x, 3) / sigma**3,
        ex_kurtosis=central_moment(x, 4) / sigma**4 - 3.0,
        n=int(x.size),
    )


def freedman_diaconis_bins(x: ArrayLike, minimum: int = 10) -> int:
    """Freedman-Diaconis bin count, clamped to [minimum, max(minimum, n)]."""
    x = as_array(x)
    q75, q25 = np.percentile(x, [75, 25])
    width = 2.0 * (q75 - q25) / np.cbrt(x.size)
    span = x.max() - x.min()
    if width <= 0 or span <= 0:
        return minimum
    # a near-zero IQR would otherwise ask for an unbounded number of bins
    return max(minimum, int(min(np.ceil(span / width), x.size)))


def histogram_pdf(x: ArrayLike, bins: Optional[int] = None) -> Histogram:
    """Equal-width histogram over [min, max], normalised to unit area.

    ``bins=None`` picks the Freedman-Diaconis count (at least 10 bins).
    """
    x = as_array(x)
    if x.size < 2:
        raise TooShort("need at least two samples")
    if np.ptp(x) == 0:
        raise DegenerateSeries("standard deviation is zero")
    if bins is None:
        bins = freedman_diaconis_bins(x)
    dens, edges = np.histogram(x, bins=int(bins), range=(x.min(), x.max()), density=True)
    return Histogram(edges, dens)
