"""Complexity measures for financial time series: sample entropy, RCMSE,
MF-DFA, distribution statistics and shuffle-surrogate tests."""

__version__ = "0.1.0"

from .entropy import EntropyParams, EntropyProfile, coarse_grain, match_counts, mse, rcmse, rcmse_coarse_grain, sample_entropy
from .ingest import Series, log_returns, parse_csv, read_prices
from .mfdfa import MfdfaParams, mfdfa, profile, segment_variances, spectrum
from .stats import central_moment, distribution_stats, histogram_pdf
from .surrogate import ShuffleConfig, entropy_shuffle_test, shuffle, spectrum_shuffle_test
