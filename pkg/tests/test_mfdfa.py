import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from hypothesis.extra.numpy import arrays

from fracten.errors import AllZeroVariances, InsufficientQPoints, InvalidParams, TooShort
from fracten.mfdfa import (
    MfdfaParams, default_q_grid, default_s_grid, fluctuation, mfdfa, profile, segment_bounds,
    segment_variances, spectrum, spectrum_from_h,
)
from fracten.synthetic import binomial_cascade, white_noise
from oracles import polyfit_variances


def test_profile_examples():
    assert profile([1, -1, 1, -1]).tolist() == [1, 0, 1, 0]
    assert profile([3.0] * 6).tolist() == [0.0] * 6


@given(arrays(np.float64, st.integers(2, 500), elements=st.floats(-1e3, 1e3)))
def test_profile_ends_at_zero(x):
    Y = profile(x)
    assert abs(Y[-1]) <= 1e-9 * x.size * max(np.std(x), 1.0)


def test_segment_bounds_example():
    # 1-based {1-4, 5-8} forward and {7-10, 3-6} backward
    assert segment_bounds(10, 4) == [(0, 4), (4, 8), (6, 10), (2, 6)]


@given(st.integers(4, 400), st.data())
def test_segments_tile_each_direction_once(n, data):
    s = data.draw(st.integers(1, n))
    ns = n // s
    bounds = segment_bounds(n, s)
    assert len(bounds) == 2 * ns
    fwd, bwd = bounds[:ns], bounds[ns:]
    cover_f = np.zeros(n, int)
    cover_b = np.zeros(n, int)
    for a, b in fwd:
        cover_f[a:b] += 1
    for a, b in bwd:
        cover_b[a:b] += 1
    assert cover_f[: ns * s].tolist() == [1] * (ns * s) and not cover_f[ns * s:].any()
    assert cover_b[n - ns * s:].tolist() == [1] * (ns * s) and not cover_b[: n - ns * s].any()


def test_linear_profile_has_zero_variance():
    Y = 3.0 * np.arange(200) - 50.0
    for s in (4, 16, 37):
        v = segment_variances(Y, s, 1)
        assert np.all(v <= 1e-18 * np.max(np.abs(Y)) ** 2)


def test_order_separation_on_quadratic():
    t = np.arange(300, dtype=float)
    Y = 0.01 * t**2 - t + 4
    assert np.all(segment_variances(Y, 20, 1) > 0)
    assert np.all(segment_variances(Y, 20, 2) <= 1e-18 * np.max(np.abs(Y)) ** 2)


@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("s", [5, 16, 33, 100])
def test_variances_match_polyfit(order, s):
    if s < order + 2:
        pytest.skip("window too small for order")
    Y = profile(np.random.default_rng(s * 7 + order).standard_normal(1003))
    assert np.allclose(segment_variances(Y, s, order), polyfit_variances(Y, s, order),
                       rtol=1e-8, atol=1e-12)


def test_segment_variances_errors():
    with pytest.raises(InvalidParams):
        segment_variances(np.arange(50.0), 2, 1)
    with pytest.raises(TooShort):
        segment_variances(np.arange(10.0), 20, 1)


def test_fluctuation_examples():
    for q in (-5, -1, 0, 0.5, 2, 5):
        assert fluctuation([4.0] * 6, q) == pytest.approx(2.0, rel=1e-12)
    assert fluctuation([1.0, 9.0], 2) == pytest.approx(np.sqrt(5), rel=1e-12)
    f0 = fluctuation([1.0, 9.0], 0)
    assert f0 == pytest.approx(np.sqrt(3), rel=1e-12)
    assert fluctuation([1.0, 9.0], -1e-4) < f0 < fluctuation([1.0, 9.0], 1e-4)


def test_fluctuation_zero_variances():
    with pytest.raises(AllZeroVariances):
        fluctuation([0.0, 0.0], 2)
    # a zero segment is floored for q <= 0 and ignored in the positive-power sum
    assert fluctuation([0.0, 4.0], 2) == pytest.approx(np.sqrt(2), rel=1e-12)
    assert fluctuation([0.0, 4.0], -2) == pytest.approx(np.sqrt(2e-30), rel=1e-6)


@given(arrays(np.float64, st.integers(1, 40), elements=st.floats(0, 1e6)))
def test_power_mean_monotone_in_q(v):
    assume(np.any(v > 0))
    q = default_q_grid()
    F = np.array([fluctuation(v, qi) for qi in q])
    assert np.all(np.diff(F) >= -1e-9 * F[:-1])


def test_default_grids():
    s = default_s_grid(10_000)
    assert s[0] == 16 and s[-1] == 2500 and s.size == 20
    assert default_s_grid(8192, spacing="dyadic").tolist() == [16, 32, 64, 128, 256, 512, 1024, 2048]
    q = default_q_grid()
    assert q.size == 21 and q[0] == -5 and q[-1] == 5 and 0.0 in q


def test_params_validation():
    with pytest.raises(InvalidParams):
        MfdfaParams(q_grid=[1.0, 0.5])
    with pytest.raises(InvalidParams):
        mfdfa(np.ones(100), MfdfaParams(s_grid=[8, 50]))  # 50 > N/4
    with pytest.raises(InvalidParams):
        mfdfa(np.ones(100), MfdfaParams(s_grid=[2, 10], poly_order=1))


def test_surface_shape_and_monotonicity():
    x = white_noise(4096, 3)
    surf = mfdfa(x)
    assert surf.F.shape == (surf.q.size, surf.s.size)
    assert np.all(np.isfinite(surf.F)) and np.all(surf.F > 0)
    assert np.all(np.diff(surf.F, axis=0) >= -1e-12 * surf.F[:-1])


def test_white_noise_hurst():
    sp = spectrum(mfdfa(white_noise(10_000, 1)))
    assert abs(sp.hurst - 0.5) <= 0.05
    assert 0 < sp.hurst_stderr < 0.05


def test_fit_range_restricts_regression():
    x = white_noise(4096, 2)
    full = mfdfa(x)
    part = mfdfa(x, MfdfaParams(fit_range=(30, 300)))
    assert part.fit_range[0] >= 30 and part.fit_range[1] <= 300
    assert np.array_equal(full.F, part.F)
    with pytest.raises(InvalidParams):
        mfdfa(x, MfdfaParams(fit_range=(17, 18)))


def test_scale_and_shift_invariance():
    x = white_noise(4096, 9)
    base = mfdfa(x)
    assert np.max(np.abs(mfdfa(7.5 * x).h - base.h)) <= 1e-9
    assert np.max(np.abs(mfdfa(x + 1e3).h - base.h)) <= 1e-9


def test_spectrum_of_monofractal_h():
    q = default_q_grid()
    sp = spectrum_from_h(q, np.full(q.size, 0.7))
    assert np.allclose(sp.tau, 0.7 * q - 1, atol=1e-15)
    assert np.allclose(sp.alpha, 0.7, atol=1e-12)
    assert np.allclose(sp.f_alpha, 1.0, atol=1e-12)
    assert sp.width == pytest.approx(0.0, abs=1e-12)
    assert sp.hurst == 0.7


def test_alpha_forms_agree():
    # alpha = d(q h - 1)/dq and alpha = h + q h' for a smooth h(q)
    q = np.linspace(-5, 5, 201)
    h = 0.6 + 0.2 * np.tanh(-q / 3)
    sp = spectrum_from_h(q, h)
    dh = np.gradient(h, q, edge_order=1)
    inner = slice(1, -1)
    assert np.allclose(sp.alpha[inner], (h + q * dh)[inner], atol=1e-3)
    assert np.allclose(sp.f_alpha[inner], (q * (sp.alpha - h) + 1)[inner], atol=1e-12)


def test_spectrum_needs_five_q():
    with pytest.raises(InsufficientQPoints):
        spectrum_from_h([-1, 1, 2, 3], [0.5, 0.5, 0.5, 0.5])


def test_cascade_tau_concave_and_peak_at_zero():
    c = binomial_cascade(13, 0.6)
    sp = spectrum(mfdfa(c, MfdfaParams(s_grid=default_s_grid(c.size, spacing="dyadic"))))
    assert np.all(np.diff(sp.tau, 2) <= 1e-6)
    assert sp.f_alpha.max() <= 1.1
    assert sp.q[np.argmax(sp.f_alpha)] == 0.0
    assert np.all(sp.alpha > 0)


def test_white_noise_spectrum_peak_at_zero():
    sp = spectrum(mfdfa(white_noise(8192, 0)))
    assert abs(sp.q[np.argmax(sp.f_alpha)]) <= 0.5
    assert sp.f_alpha.max() <= 1.1


def test_floored_segments_reported():
    x = np.zeros(400)
    x[::50] = 1.0  # long flat stretches give exactly linear profile segments
    surf = mfdfa(x, MfdfaParams(s_grid=[8, 16, 25]))
    assert surf.floored_segments > 0
    assert np.all(np.isfinite(surf.F))
