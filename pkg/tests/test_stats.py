import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from hypothesis.extra.numpy import arrays

from fracten.errors import DegenerateSeries
from fracten.stats import central_moment, distribution_stats, freedman_diaconis_bins, histogram_pdf

finite = st.floats(-1e3, 1e3, allow_nan=False)
series_st = arrays(np.float64, st.integers(3, 200), elements=finite)


def test_central_moment_examples():
    assert central_moment([1, 2, 3], 2) == pytest.approx(2 / 3, abs=1e-15)
    assert central_moment([4.2] * 7, 3) == 0.0


def test_fourth_moment_of_normal():
    x = np.random.default_rng(20241202).standard_normal(10_000)
    assert abs(central_moment(x, 4) - 3.0) <= 0.2


def test_moment_order_checked():
    with pytest.raises(ValueError):
        central_moment([1, 2], 5)


def test_symmetric_skewness_exactly_zero():
    assert distribution_stats([-2, -1, 0, 1, 2]).skewness == 0.0


def test_population_convention():
    st_ = distribution_stats([1.0, 2.0, 3.0, 4.0])
    assert st_.std_dev == pytest.approx(np.std([1, 2, 3, 4], ddof=0), rel=1e-15)
    assert st_.n == 4


def test_degenerate():
    with pytest.raises(DegenerateSeries):
        distribution_stats([3.0, 3.0, 3.0])
    with pytest.raises(DegenerateSeries):
        histogram_pdf([3.0, 3.0])


def _spread(x):
    return np.std(x) > 1e-3 * (1 + np.max(np.abs(x)))


@given(series_st, st.floats(0.01, 100), st.floats(-100, 100))
def test_affine_invariance(x, a, b):
    assume(_spread(x))
    s0, s1 = distribution_stats(x), distribution_stats(a * x + b)
    assert abs(s0.skewness - s1.skewness) <= 1e-9
    assert abs(s0.ex_kurtosis - s1.ex_kurtosis) <= 1e-9 * max(1.0, abs(s0.ex_kurtosis))


@given(series_st)
def test_reflection(x):
    assume(_spread(x))
    s0, s1 = distribution_stats(x), distribution_stats(-x)
    assert abs(s0.skewness + s1.skewness) <= 1e-9
    assert abs(s0.ex_kurtosis - s1.ex_kurtosis) <= 1e-9 * max(1.0, abs(s0.ex_kurtosis))


def test_histogram_direct_count():
    h = histogram_pdf([0, 0, 1, 1], bins=2)
    assert h.bin_edges.tolist() == [0.0, 0.5, 1.0]
    assert h.densities.tolist() == [1.0, 1.0]


def test_histogram_uniform():
    x = np.random.default_rng(7).uniform(0, 1, 100_000)
    h = histogram_pdf(x, bins=10)
    assert np.all(np.abs(h.densities - 1.0) <= 0.05)


def test_default_bins_freedman_diaconis():
    x = np.random.default_rng(1).standard_normal(5000)
    q75, q25 = np.percentile(x, [75, 25])
    expected = int(np.ceil(np.ptp(x) / (2 * (q75 - q25) / 5000 ** (1 / 3))))
    assert histogram_pdf(x).densities.size == max(10, expected)
    assert freedman_diaconis_bins([0.0, 1.0, 2.0]) == 10  # few points still get 10 bins


@given(series_st, st.one_of(st.none(), st.integers(1, 60)))
def test_histogram_integrates_to_one(x, bins):
    assume(np.ptp(x) > 0)
    h = histogram_pdf(x, bins)
    assert abs(np.sum(h.densities * np.diff(h.bin_edges)) - 1.0) <= 1e-9
    assert np.all(h.densities >= 0)
