"""Full analysis of one series bundled into a JSON-serialisable report."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .entropy import EntropyParams, EntropyProfile, mse, rcmse
from .ingest import Series
from .mfdfa import FluctuationSurface, MfdfaParams, MultifractalSpectrum, mfdfa, spectrum
from .stats import DistributionStats, Histogram, distribution_stats, histogram_pdf
from .surrogate import ShuffleConfig, SurrogateReport, entropy_shuffle_test, spectrum_shuffle_test


def jsonable(obj):
    """Plain-Python copy of obj; non-finite floats become None."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def mfdfa_params_dict(params: MfdfaParams, s_grid) -> dict:
    return {
        "poly_order": params.poly_order,
        "q_grid": params.q_grid,
        "s_grid": s_grid,
        "fit_range": params.fit_range,
        "variance_floor": params.variance_floor,
    }


@dataclass
class AnalysisReport:
    input: dict
    params: dict
    stats: DistributionStats
    histogram: Histogram
    entropy: EntropyProfile
    surface: FluctuationSurface
    spectrum: MultifractalSpectrum
    seed: int
    surrogates: dict = field(default_factory=dict)
    tool_version: str = __version__

    def to_dict(self):
        return {
            "tool_version": self.tool_version,
            "seed": self.seed,
            "input": self.input,
            "params": self.params,
            "stats": self.stats.to_dict(),
            "entropy": self.entropy.to_dict(),
            "mfdfa": {
                **self.spectrum.summary(),
                "floored_segments": self.surface.floored_segments,
                "fit_range": self.surface.fit_range,
            },
            "surrogates": {k: v.to_dict() for k, v in self.surrogates.items()},
        }

    def files(self, stem: str) -> dict:
        """Output file name -> text content."""
        return {
            f"{stem}_report.json": dumps(self.to_dict()),
            f"{stem}_histogram.csv": to_csv(("bin_left", "bin_right", "density"), self.histogram.rows()),
            f"{stem}_{self.entropy.method}.csv": to_csv(("scale", "entropy", "defined"), self.entropy.rows()),
            f"{stem}_mfdfa_F.csv": to_csv(("q", "s", "F"), self.surface.rows()),
            f"{stem}_mfdfa_spectrum.csv": to_csv(
                ("q", "h", "h_stderr", "tau", "alpha", "f_alpha"), self.spectrum.rows()),
            **{
                f"{stem}_shuffle_{name}.csv": to_csv(("realization", "seed", "value"), rep.rows())
                for name, rep in self.surrogates.items()
            },
        }


def analyse(series: Series, entropy_params: EntropyParams = EntropyParams(),
            mfdfa_params: MfdfaParams = MfdfaParams(), shuffle_cfg: Optional[ShuffleConfig] = ShuffleConfig(),
            method: str = "rcmse", bins: Optional[int] = None, source: Optional[dict] = None
            ) -> AnalysisReport:
    """Statistics, multiscale entropy, MF-DFA and (unless ``shuffle_cfg`` is
    None) both shuffle tests for one series."""
    x = series.values
    stats = distribution_stats(x)
    hist = histogram_pdf(x, bins)
    profile_fn = {"rcmse": rcmse, "mse": mse}[method]
    ent = profile_fn(x, entropy_params)
    surface = mfdfa(x, mfdfa_params)
    spec = spectrum(surface)
    surrogates = {}
    if shuffle_cfg is not None:
        surrogates["sampen"] = entropy_shuffle_test(x, entropy_params, shuffle_cfg)
        surrogates["mfdfa_width"] = spectrum_shuffle_test(x, mfdfa_params, shuffle_cfg)
    params = {
        "entropy": {**asdict(entropy_params), "method": method, "r": ent.r},
        "mfdfa": mfdfa_params_dict(mfdfa_params, surface.s),
        "histogram_bins": hist.densities.size,
        "shuffle": None if shuffle_cfg is None else {
            "n_shuffles": shuffle_cfg.n_shuffles, "base_seed": shuffle_cfg.base_seed},
    }
    info = {"name": series.name, "n": len(series), "date_range": series.date_range, **(source or {})}
    return AnalysisReport(
        input=info, params=params, stats=stats, histogram=hist, entropy=ent,
        surface=surface, spectrum=spec, surrogates=surrogates,
        seed=0 if shuffle_cfg is None else shuffle_cfg.base_seed,
    )
