"""Multifractal detrended fluctuation analysis.

Pipeline: profile -> bidirectional segmentation -> polynomial detrending ->
q-th order fluctuation functions F_q(s) -> log-log slopes h(q) -> mass
exponents tau(q) and the singularity spectrum f(alpha).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from .errors import AllZeroVariances, InsufficientQPoints, InvalidParams, TooShort
from .ingest import ArrayLike, as_array

VARIANCE_FLOOR = 1e-30


def default_s_grid(n: int, poly_order: int = 1, count: int = 20,
                   s_min: Optional[int] = None, s_max: Optional[int] = None,
                   spacing: str = "log") -> np.ndarray:
    """Integer window sizes from max(16, order + 4) to n // 4.

    ``spacing="log"`` gives ``count`` log-spaced sizes (duplicates after
    rounding removed); ``"dyadic"`` gives the powers of two in range, which
    suits signals that are self-similar under halving.
    """
    lo = s_min if s_min is not None else max(16, poly_order + 4)
    hi = s_max if s_max is not None else n // 4
    if hi < lo:
        raise TooShort(f"series of length {n} too short for windows of {lo}..{hi}")
    if spacing == "dyadic":
        k_lo, k_hi = int(np.ceil(np.log2(lo))), int(np.floor(np.log2(hi)))
        return 2 ** np.arange(k_lo, k_hi + 1)
    if spacing != "log":
        raise InvalidParams(f"unknown spacing {spacing!r}")
    return np.unique(np.round(np.geomspace(lo, hi, count)).astype(int))


def default_q_grid(q_min: float = -5.0, q_max: float = 5.0, step: float = 0.5) -> np.ndarray:
    n = int(round((q_max - q_min) / step)) + 1
    q = q_min + step * np.arange(n)
    q[np.isclose(q, 0.0, atol=step * 1e-9)] = 0.0
    return q


@dataclass(frozen=True)
class MfdfaParams:
    s_grid: Optional[Sequence[int]] = None  # None: default_s_grid(N, poly_order)
    q_grid: Sequence[float] = field(default_factory=default_q_grid)
    poly_order: int = 1
    fit_range: Optional[Tuple[float, float]] = None  # inclusive s bounds of the h(q) fit
    variance_floor: float = VARIANCE_FLOOR

    def __post_init__(self):
        if self.poly_order < 1:
            raise InvalidParams(f"poly_order must be >= 1, got {self.poly_order}")
        q = np.asarray(self.q_grid, dtype=float)
        if q.ndim != 1 or q.size < 1 or np.any(np.diff(q) <= 0):
            raise InvalidParams("q_grid must be strictly increasing")
        object.__setattr__(self, "q_grid", q)
        if self.s_grid is not None:
            object.__setattr__(self, "s_grid", np.asarray(self.s_grid, dtype=int))

    def resolve_s_grid(self, n: int) -> np.ndarray:
        s = default_s_grid(n, self.poly_order) if self.s_grid is None else self.s_grid
        if s.size < 2 or np.any(np.diff(s) <= 0):
            raise InvalidParams("s_grid must hold at least two strictly increasing sizes")
        if s[0] < self.poly_order + 2:
            raise InvalidParams(
                f"smallest window {s[0]} must be >= poly_order + 2 = {self.poly_order + 2}"
            )
        if s[-1] > n / 4:
            raise InvalidParams(f"largest window {s[-1]} exceeds N/4 = {n / 4:g}")
        return s


@dataclass(frozen=True)
class FluctuationSurface:
    q: np.ndarray
    s: np.ndarray
    F: np.ndarray  # shape (len(q), len(s))
    h: np.ndarray
    h_stderr: np.ndarray
    intercept: np.ndarray
    fit_range: Tuple[int, int]
    poly_order: int
    floored_segments: int

    def rows(self):
        """(q, s, F) long-format rows."""
        return [(float(q), int(s), float(self.F[i, j]))
                for i, q in enumerate(self.q) for j, s in enumerate(self.s)]


@dataclass(frozen=True)
class MultifractalSpectrum:
    q: np.ndarray
    h: np.ndarray
    h_stderr: np.ndarray
    tau: np.ndarray
    alpha: np.ndarray
    f_alpha: np.ndarray
    hurst: float
    hurst_stderr: float

    @property
    def alpha_min(self) -> float:
        return float(self.alpha.min())

    @property
    def alpha_max(self) -> float:
        return float(self.alpha.max())

    @property
    def width(self) -> float:
        return self.alpha_max - self.alpha_min

    def rows(self):
        """(q, h, h_stderr, tau, alpha, f_alpha) rows."""
        cols = (self.q, self.h, self.h_stderr, self.tau, self.alpha, self.f_alpha)
        return [tuple(float(c[i]) for c in cols) for i in range(self.q.size)]

    def summary(self):
        return {
            "hurst": self.hurst,
            "hurst_stderr": self.hurst_stderr,
            "width": self.width,
            "alpha_min": self.alpha_min,
            "alpha_max": self.alpha_max,
        }


def profile(x: ArrayLike) -> np.ndarray:
    """Cumulative sum of deviations from the mean."""
    x = as_array(x)
    if x.size < 2:
        raise TooShort("need at least two samples")
    return np.cumsum(x - x.mean())


def segment_bounds(n: int, s: int):
    """0-based half-open (start, stop) pairs: N_s segments tiled from the
    start, then N_s tiled back from the end (last segment first)."""
    ns = n // s
    forward = [(v * s, (v + 1) * s) for v in range(ns)]
    backward = [(n - (v + 1) * s, n - v * s) for v in range(ns)]
    return forward + backward


def _detrend_basis(s: int, poly_order: int) -> np.ndarray:
    # orthonormal basis of degree <= poly_order polynomials on s points
    t = np.linspace(-1.0, 1.0, s)
    q, _ = np.linalg.qr(np.vander(t, poly_order + 1))
    return q


def segment_variances(Y: ArrayLike, s: int, poly_order: int = 1) -> np.ndarray:
    """Mean squared residual of a least-squares polynomial fit in each of the
    2 N_s segments, ordered as in ``segment_bounds``."""
    Y = as_array(Y)
    n = Y.size
    if s < poly_order + 2:
        raise InvalidParams(f"window {s} must be >= poly_order + 2 = {poly_order + 2}")
    ns = n // s
    if ns < 1:
        raise TooShort(f"series of length {n} shorter than window {s}")
    segs = np.concatenate([
        Y[: ns * s].reshape(ns, s),
        Y[n - ns * s:].reshape(ns, s)[::-1],
    ])
    basis = _detrend_basis(s, poly_order)
    resid = segs - (segs @ basis) @ basis.T
    return np.mean(resid**2, axis=1)


def fluctuation(variances: ArrayLike, q: float, floor: float = VARIANCE_FLOOR) -> float:
    """q-th order power mean of the segment RMS fluctuations.

    q = 0 uses the logarithmic mean, exp(mean(ln var) / 2). Variances below
    ``floor`` are raised to it for q <= 0.
    """
    v = as_array(variances)
    if v.size == 0 or np.any(v < 0):
        raise InvalidParams("variances must be a non-empty array of non-negative values")
    if not np.any(v > 0):
        raise AllZeroVariances("every segment variance is zero")
    n = v.size
    if q > 0:
        v = v[v > 0]  # zero segments add nothing to a positive-power sum
    else:
        v = np.maximum(v, floor)
    logv = np.log(v)
    if q == 0:
        return float(np.exp(0.5 * logv.mean()))
    return float(np.exp((logsumexp(0.5 * q * logv) - np.log(n)) / q))


def _ols(x: np.ndarray, Y: np.ndarray):
    """Row-wise slope, its standard error and intercept of Y against x."""
    xc = x - x.mean()
    sxx = np.dot(xc, xc)
    slope = (Y - Y.mean(axis=1, keepdims=True)) @ xc / sxx
    intercept = Y.mean(axis=1) - slope * x.mean()
    resid = Y - intercept[:, None] - slope[:, None] * x[None, :]
    dof = x.size - 2
    if dof > 0:
        stderr = np.sqrt(np.sum(resid**2, axis=1) / dof / sxx)
    else:
        stderr = np.full(slope.shape, np.nan)
    return slope, stderr, intercept


def mfdfa(x: ArrayLike, params: MfdfaParams = MfdfaParams()) -> FluctuationSurface:
    x = as_array(x)
    n = x.size
    s_grid = params.resolve_s_grid(n)
    q_grid = params.q_grid
    Y = profile(x)

    F = np.empty((q_grid.size, s_grid.size))
    floored = 0
    any_nonpositive_q = bool(np.any(q_grid <= 0))
    # variances depend only on s; reuse them for every q
    for j, s in enumerate(s_grid):
        var = segment_variances(Y, int(s), params.poly_order)
        if any_nonpositive_q:
            floored += int(np.count_nonzero(var < params.variance_floor))
        for i, q in enumerate(q_grid):
            F[i, j] = fluctuation(var, float(q), params.variance_floor)

    if params.fit_range is None:
        mask = np.ones(s_grid.size, dtype=bool)
    else:
        lo, hi = params.fit_range
        mask = (s_grid >= lo) & (s_grid <= hi)
        if np.count_nonzero(mask) < 2:
            raise InvalidParams(f"fit range {params.fit_range} covers fewer than two windows")
    fit_s = s_grid[mask]
    h, h_err, icpt = _ols(np.log(fit_s), np.log(F[:, mask]))
    return FluctuationSurface(
        q=q_grid.copy(), s=s_grid.copy(), F=F, h=h, h_stderr=h_err, intercept=icpt,
        fit_range=(int(fit_s[0]), int(fit_s[-1])), poly_order=params.poly_order,
        floored_segments=floored,
    )


def spectrum_from_h(q: ArrayLike, h: ArrayLike, h_stderr: Optional[ArrayLike] = None
                    ) -> MultifractalSpectrum:
    """tau(q) = q h(q) - 1, alpha = d tau / dq (central differences, one-sided
    at the grid ends), f(alpha) = q alpha - tau."""
    q, h = as_array(q), as_array(h)
    if q.size < 5:
        raise InsufficientQPoints(f"need at least 5 q values, got {q.size}")
    if h.size != q.size:
        raise InvalidParams("q and h differ in length")
    err = np.zeros_like(h) if h_stderr is None else as_array(h_stderr)
    tau = q * h - 1.0
    alpha = np.gradient(tau, q, edge_order=1)
    f_alpha = q * alpha - tau
    i2 = int(np.argmin(np.abs(q - 2.0)))
    return MultifractalSpectrum(
        q=q.copy(), h=h.copy(), h_stderr=err.copy(), tau=tau, alpha=alpha, f_alpha=f_alpha,
        hurst=float(h[i2]), hurst_stderr=float(err[i2]),
    )


def spectrum(surface: FluctuationSurface) -> MultifractalSpectrum:
    return spectrum_from_h(surface.q, surface.h, surface.h_stderr)
