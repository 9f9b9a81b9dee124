import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from etsselect.errors import SeriesTooShort
from etsselect.features import FEATURE_NAMES, extract
from etsselect.features.acf import acf, pacf
from etsselect.features.catch22 import histogram_mode
from etsselect.features.stationarity import kpss_stat
from tests.conftest import make_series


def brute_acf1(x):
    """Independent oracle: direct definition of the lag-1 autocorrelation."""
    xc = x - x.mean()
    return float(np.dot(xc[:-1], xc[1:]) / np.dot(xc, xc))


# acf / pacf against oracles
# ------------------------------------------------------------------------------
def test_acf_matches_brute_force():
    rng = np.random.default_rng(12)
    x = rng.normal(0, 1, 400)
    assert acf(x, 1)[0] == pytest.approx(brute_acf1(x), abs=1e-12)


def test_ar1_acf1_near_theoretical():
    rng = np.random.default_rng(8)
    n = 5000
    x = np.zeros(n)
    for t in range(1, n):
        x[t] = 0.8 * x[t - 1] + rng.normal()
    assert 0.75 <= acf(x, 1)[0] <= 0.85
    p = pacf(x, 3)
    assert 0.75 <= p[0] <= 0.85
    assert abs(p[1]) < 0.05


# extract block examples
# ------------------------------------------------------------------------------
def test_series_length_is_literal():
    fv = extract(make_series(np.sin(np.arange(87.0)) + 5))
    assert fv["series_length"] == 87.0


def test_nonseasonal_zeroes_seasonal_features():
    fv = extract(make_series(np.random.default_rng(1).normal(0, 1, 60), period=1))
    assert fv["seas_acf1"] == 0.0
    assert fv["seas_pacf"] == 0.0
    assert fv["seasonal_strength"] == 0.0
    assert fv["peak"] == 0.0 and fv["trough"] == 0.0
    assert fv["nperiods"] == 0.0


def test_white_noise_features():
    rng = np.random.default_rng(42)
    y = rng.normal(0, 1, 2000)
    fv = extract(make_series(y))
    assert abs(fv["x_acf1"]) < 0.05
    assert fv["x_acf1"] == pytest.approx(brute_acf1(y), abs=1e-12)
    assert fv["trend"] < 0.1


def test_ramp_trend_and_entropy():
    ramp = extract(make_series(np.arange(100.0)))
    noise = extract(make_series(np.random.default_rng(3).normal(0, 1, 100)))
    assert ramp["trend"] > 0.99
    assert ramp["entropy"] < noise["entropy"]
    assert abs(ramp["linearity"]) > 10 * abs(ramp["curvature"])


def test_white_noise_strengths_small():
    rng = np.random.default_rng(7)
    fv = extract(make_series(rng.normal(0, 1, 1000), period=12))
    assert fv["trend"] < 0.2
    assert fv["seasonal_strength"] < 0.2


def test_seasonal_sine():
    t = np.arange(240.0)
    y = 100.0 + 10.0 * np.sin(2 * np.pi * t / 12)
    fv = extract(make_series(y, period=12))
    assert fv["seasonal_strength"] >= 0.99
    assert fv["seas_acf1"] > 0.5
    assert fv["periodicityWang_th0_01"] == 12.0


def test_constant_series_sanitized():
    fv = extract(make_series(np.full(50, 3.0)))
    assert np.all(np.isfinite(fv.values))
    assert "x_acf1" in fv.sanitized
    assert fv["x_acf1"] == 0.0


def test_kpss_separates_noise_from_walk():
    rng = np.random.default_rng(11)
    wn = rng.normal(0, 1, 2000)
    rw = np.cumsum(rng.normal(0, 1, 2000))
    assert kpss_stat(wn) < 0.5
    assert kpss_stat(rw) > 1.0


def test_crossing_points_alternating():
    y = np.tile([1.0, -1.0], 50)
    fv = extract(make_series(y))
    assert fv["crossing_point"] == 99.0


def test_flat_spots_long_plateau():
    y = np.concatenate([np.full(50, 5.0), np.linspace(6, 20, 50)])
    fv = extract(make_series(y))
    assert fv["flat_spots"] >= 5.0


# catch22 block examples
# ------------------------------------------------------------------------------
def test_histogram_mode5_tie_takes_lower_bin():
    y = np.tile([-1.0, 1.0], 40)
    z = (y - y.mean()) / y.std(ddof=1)
    edges = np.linspace(z.min(), z.max(), 6)
    expected = (edges[0] + edges[1]) / 2.0  # lower of the two tied bins
    assert histogram_mode(z, 5) == pytest.approx(expected, abs=1e-12)


def test_longstretch_above_mean_on_ramp():
    n = 100
    fv = extract(make_series(np.arange(float(n))))
    assert fv["binaryStats_mean_longStretch1"] == pytest.approx(n / 2, abs=1)


def test_pnn40_on_smooth_vs_jumpy():
    smooth = extract(make_series(np.linspace(0, 1, 200) ** 2 + 1))
    jumpy = extract(make_series(np.tile([0.0, 10.0], 100)))
    assert jumpy["hrv_classic_pnn40"] > smooth["hrv_classic_pnn40"]


# invariants
# ------------------------------------------------------------------------------
def test_extract_deterministic():
    rng = np.random.default_rng(5)
    s = make_series(rng.normal(10, 2, 150), period=4)
    a = extract(s)
    b = extract(s)
    assert np.array_equal(a.values, b.values)


SCALE_FREE = [
    "trend", "seasonal_strength", "entropy", "x_acf1", "x_acf10",
    "seas_acf1", "unitRoot_kpss", "series_length",
] + [n for n in FEATURE_NAMES if FEATURE_NAMES.index(n) >= 37]


def test_positive_affine_rescale_invariance():
    rng = np.random.default_rng(17)
    y = rng.normal(50, 5, 300)
    base = extract(make_series(y, period=12)).as_dict()
    scaled = extract(make_series(3.5 * y + 11.0, period=12)).as_dict()
    for name in SCALE_FREE:
        assert scaled[name] == pytest.approx(base[name], abs=1e-8), name


def test_too_short_rejected():
    with pytest.raises(SeriesTooShort):
        extract(make_series([1.0] * 7))
    with pytest.raises(SeriesTooShort):
        extract(make_series([1.0] * 20, period=12))


@settings(max_examples=25, deadline=None)
@given(hnp.arrays(np.float64, st.integers(8, 60),
                  elements=st.floats(-1e6, 1e6, allow_nan=False)))
def test_extract_never_emits_nonfinite(values):
    fv = extract(make_series(values))
    assert np.all(np.isfinite(fv.values))


@pytest.mark.parametrize("values", [
    np.zeros(20),
    np.tile([0.0, 1.0], 10),
    np.array([1e-12] * 10 + [1e12] * 10),
    np.concatenate([np.zeros(30), [1e9]]),
])
def test_extract_finite_on_edge_inputs(values):
    fv = extract(make_series(values))
    assert np.all(np.isfinite(fv.values))


def test_manifest_is_59_and_ordered():
    assert len(FEATURE_NAMES) == 59
    assert FEATURE_NAMES[0] == "x_acf1"
    assert FEATURE_NAMES[36] == "series_length"
    assert FEATURE_NAMES[37] == "histogram_mode5"
    assert FEATURE_NAMES[58] == "periodicityWang_th0_01"
