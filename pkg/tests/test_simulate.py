import numpy as np
import pytest

from etsselect import EtsParams, EtsSpec, simulate


def test_degenerate_alpha_freezes_level():
    params = EtsParams(alpha=1e-9, level0=10.0)
    out = simulate(EtsSpec("A", "N", "N"), params, n=50, noise_sd=0.001, seed=5)
    assert np.all(np.abs(out.values - 10.0) < 0.01)


def test_same_seed_bit_identical():
    params = EtsParams(alpha=0.4, level0=20.0)
    a = simulate(EtsSpec("A", "N", "N"), params, n=100, noise_sd=1.0, seed=77)
    b = simulate(EtsSpec("A", "N", "N"), params, n=100, noise_sd=1.0, seed=77)
    assert np.array_equal(a.values, b.values)
    c = simulate(EtsSpec("A", "N", "N"), params, n=100, noise_sd=1.0, seed=78)
    assert not np.array_equal(a.values, c.values)


def test_aan_unit_trend_slope():
    # noiseless recursion gives y_t = t exactly, so the fitted slope is 1
    params = EtsParams(alpha=0.5, level0=0.0, beta=0.1, trend0=1.0)
    out = simulate(EtsSpec("A", "A", "N"), params, n=200, noise_sd=0.01, seed=42)
    slope = np.polyfit(np.arange(200), out.values, 1)[0]
    assert abs(slope - 1.0) <= 0.05


def test_rejects_param_spec_mismatch():
    with pytest.raises(ValueError):
        simulate(EtsSpec("A", "N", "N"),
                 EtsParams(alpha=0.5, level0=1.0, gamma=0.1, seasonal0=np.zeros(4)),
                 n=50, noise_sd=1.0, seed=1)
    with pytest.raises(ValueError):  # missing trend params
        simulate(EtsSpec("A", "A", "N"), EtsParams(alpha=0.5, level0=1.0),
                 n=50, noise_sd=1.0, seed=1)


def test_rejects_short_n():
    s0 = np.array([0.9, 1.1, 1.0, 1.0])
    params = EtsParams(alpha=0.3, level0=10.0, gamma=0.1, seasonal0=s0)
    with pytest.raises(ValueError):
        simulate(EtsSpec("M", "N", "M", 4), params, n=7, noise_sd=0.01, seed=1)


def test_multiplicative_seasonal_pattern():
    s0 = np.array([2.0, 0.5, 1.0, 0.5])
    s0 = s0 / s0.mean()
    params = EtsParams(alpha=0.05, level0=100.0, gamma=0.01, seasonal0=s0)
    out = simulate(EtsSpec("M", "N", "M", 4), params, n=40, noise_sd=0.001, seed=3)
    # position 0 should run about 4x position 1 given the seasonal factors
    ratio = out.values[0::4].mean() / out.values[1::4].mean()
    assert 3.5 < ratio < 4.5
