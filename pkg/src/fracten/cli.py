"""Command-line front end.

    fracten returns      --input btc.csv
    fracten stats        --input btc.csv --histogram
    fracten rcmse        --input btc.csv --m 3 --r-fraction 0.15 --max-scale 100
    fracten mfdfa        --input btc.csv --order 1
    fracten shuffle-test --input btc.csv --metric sampen --n 100 --seed 1
    fracten report       --input btc.csv

Inputs are Yahoo-style OHLCV files (analysed as close-to-close log returns)
or ``date,value`` series files such as the ones ``returns`` writes (analysed
as-is). Nothing is written unless the whole command succeeds.

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .entropy import EntropyParams, mse, rcmse
from .errors import InputError, NumericalError
from .ingest import Series, log_returns, parse_csv, parse_series_csv, series_to_csv
from .mfdfa import MfdfaParams, default_q_grid, default_s_grid, mfdfa, spectrum
from .report import analyse, dumps, mfdfa_params_dict, to_csv
from .stats import distribution_stats, histogram_pdf
from .surrogate import ShuffleConfig, entropy_shuffle_test, spectrum_shuffle_test

EXIT_INPUT, EXIT_NUMERIC = 1, 2


class StageError(Exception):
    def __init__(self, stage, exc, code):
        super().__init__(f"{stage}: {exc}")
        self.code = code


def load_series(path: str, column: str = "close"):
    """(series, source info) for a price file or a ``date,value`` file."""
    data = Path(path).read_bytes()
    stem = Path(path).stem
    header = data.decode("utf-8-sig").split("\n", 1)[0]
    names = [h.strip() for h in header.split(",")]
    if "value" in names and "Close" not in names:
        series = parse_series_csv(data, name=stem)
        return series, {"file": path, "column": "value", "kind": "series", "dropped_rows": 0}
    table = parse_csv(data, price_column=column)
    prices = table.series(column, name=stem)
    return log_returns(prices, name=stem), {
        "file": path, "column": column, "kind": "log_returns", "dropped_rows": table.dropped}


def _entropy_params(a) -> EntropyParams:
    return EntropyParams(m=a.m, r_fraction=a.r_fraction, tau_max=a.max_scale)


def _mfdfa_params(a, n: int) -> MfdfaParams:
    s_grid = default_s_grid(n, a.order, a.s_count, a.s_min, a.s_max, a.s_spacing)
    fit = None
    if a.fit_range:
        lo, hi = (float(v) for v in a.fit_range.split(","))
        fit = (lo, hi)
    return MfdfaParams(s_grid=s_grid, q_grid=default_q_grid(a.q_min, a.q_max, a.q_step),
                       poly_order=a.order, fit_range=fit)


def _shuffle_cfg(a, n_shuffles) -> ShuffleConfig:
    return ShuffleConfig(n_shuffles=n_shuffles, base_seed=a.seed, workers=a.workers)


def cmd_returns(a, series, source):
    return {f"{a.stem}_returns.csv": series_to_csv(series)}


def cmd_stats(a, series, source):
    st = distribution_stats(series)
    out = {f"{a.stem}_stats.json": dumps({"name": series.name, **st.to_dict()})}
    if a.histogram:
        hist = histogram_pdf(series, a.bins)
        out[f"{a.stem}_histogram.csv"] = to_csv(("bin_left", "bin_right", "density"), hist.rows())
    return out


def cmd_rcmse(a, series, source):
    params = _entropy_params(a)
    prof = (rcmse if a.method == "rcmse" else mse)(series, params)
    if prof.undefined_count == len(prof.entropy):
        raise NumericalError("entropy undefined at every scale")
    body = {"params": {**vars_subset(a, "m", "r_fraction", "max_scale", "method"), "r": prof.r},
            "profile": prof.to_dict(), "complexity_index": prof.complexity_index,
            "undefined_count": prof.undefined_count, "input": source}
    return {
        f"{a.stem}_{a.method}.csv": to_csv(("scale", "entropy", "defined"), prof.rows()),
        f"{a.stem}_{a.method}.json": dumps(body),
    }


def cmd_mfdfa(a, series, source):
    params = _mfdfa_params(a, len(series))
    surface = mfdfa(series, params)
    spec = spectrum(surface)
    body = {**spec.summary(), "floored_segments": surface.floored_segments,
            "fit_range": surface.fit_range, "params": mfdfa_params_dict(params, surface.s),
            "input": source}
    return {
        f"{a.stem}_mfdfa_F.csv": to_csv(("q", "s", "F"), surface.rows()),
        f"{a.stem}_mfdfa_spectrum.csv": to_csv(
            ("q", "h", "h_stderr", "tau", "alpha", "f_alpha"), spec.rows()),
        f"{a.stem}_mfdfa.json": dumps(body),
    }


def cmd_shuffle(a, series, source):
    cfg = _shuffle_cfg(a, a.n)
    if a.metric == "sampen":
        rep = entropy_shuffle_test(series, _entropy_params(a), cfg)
    else:
        rep = spectrum_shuffle_test(series, _mfdfa_params(a, len(series)), cfg)
    tag = a.metric.replace("-", "_")
    return {
        f"{a.stem}_shuffle_{tag}.json": dumps({**rep.to_dict(), "seed": a.seed, "input": source}),
        f"{a.stem}_shuffle_{tag}.csv": to_csv(("realization", "seed", "value"), rep.rows()),
    }


def cmd_report(a, series, source):
    cfg = None if a.n_shuffles == 0 else _shuffle_cfg(a, a.n_shuffles)
    rep = analyse(series, _entropy_params(a), _mfdfa_params(a, len(series)), cfg,
                  method=a.method, bins=a.bins, source=source)
    if rep.entropy.undefined_count == len(rep.entropy.entropy):
        raise NumericalError("entropy undefined at every scale")
    rep.seed = a.seed
    out = rep.files(a.stem)
    out[f"{a.stem}_returns.csv"] = series_to_csv(series)
    return out


def vars_subset(a, *names):
    return {n: getattr(a, n) for n in names}


def _add_entropy_flags(p):
    p.add_argument("--m", type=int, default=3, help="embedding dimension")
    p.add_argument("--r-fraction", type=float, default=0.15, help="tolerance as a fraction of std")
    p.add_argument("--max-scale", type=int, default=100)
    p.add_argument("--method", choices=("rcmse", "mse"), default="rcmse")


def _add_mfdfa_flags(p):
    p.add_argument("--order", type=int, default=1, help="detrending polynomial degree")
    p.add_argument("--q-min", type=float, default=-5.0)
    p.add_argument("--q-max", type=float, default=5.0)
    p.add_argument("--q-step", type=float, default=0.5)
    p.add_argument("--s-min", type=int, default=None)
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--s-count", type=int, default=20)
    p.add_argument("--s-spacing", choices=("log", "dyadic"), default="log")
    p.add_argument("--fit-range", default=None, metavar="LO,HI",
                   help="window sizes (inclusive) used in the h(q) fit")


def _add_shuffle_flags(p):
    p.add_argument("--seed", type=int, default=int(os.environ.get("FRACTEN_SEED", "0")),
                   help="base seed (default: $FRACTEN_SEED or 0)")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracten", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", required=True)
        p.add_argument("--column", choices=("close", "adj_close"), default="close")
        p.add_argument("--output-dir", default=".")
        p.add_argument("--name", default=None, help="output file stem (default: input stem)")
        p.set_defaults(func=func)
        return p

    command("returns", cmd_returns, "write log returns as date,value CSV")
    p = command("stats", cmd_stats, "moments, skewness, excess kurtosis")
    p.add_argument("--histogram", action="store_true")
    p.add_argument("--bins", type=int, default=None)
    p = command("rcmse", cmd_rcmse, "multiscale sample entropy profile")
    _add_entropy_flags(p)
    p = command("mfdfa", cmd_mfdfa, "fluctuation functions and singularity spectrum")
    _add_mfdfa_flags(p)
    p = command("shuffle-test", cmd_shuffle, "compare a metric against shuffle surrogates")
    p.add_argument("--metric", choices=("sampen", "mfdfa-width"), default="sampen")
    p.add_argument("--n", type=int, default=100, help="number of shuffles")
    _add_entropy_flags(p)
    _add_mfdfa_flags(p)
    _add_shuffle_flags(p)
    p = command("report", cmd_report, "full pipeline: stats, entropy, MF-DFA, shuffle tests")
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--n-shuffles", type=int, default=100)
    _add_entropy_flags(p)
    _add_mfdfa_flags(p)
    _add_shuffle_flags(p)
    return parser


def run(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        try:
            series, source = load_series(a.input, a.column)
        except (OSError, UnicodeDecodeError, InputError) as exc:
            raise StageError("input", exc, EXIT_INPUT) from exc
        a.stem = a.name or Path(a.input).stem
        try:
            files = a.func(a, series, source)
        except InputError as exc:
            raise StageError(a.command, exc, EXIT_INPUT) from exc
        except NumericalError as exc:
            raise StageError(a.command, exc, EXIT_NUMERIC) from exc
    except StageError as exc:
        print(f"fracten: error in {exc}", file=sys.stderr)
        return exc.code

    out_dir = Path(a.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for fname in sorted(files):
        (out_dir / fname).write_text(files[fname])
        print(out_dir / fname)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
