import numpy as np
import pytest

from etsselect import (
    EtsParams,
    EtsSpec,
    FittedEts,
    fit,
    forecast,
    parse_spec,
    simulate,
)
from etsselect.errors import NonPositiveData, TooShort
from tests.conftest import make_series


# fit basics
# ------------------------------------------------------------------------------
def test_constant_series_forecasts_exactly():
    series = make_series([5.0] * 30)
    fitted = fit(series, EtsSpec("A", "N", "N"))
    fc = forecast(fitted, h=8, confidence=0.95, n_paths=200, seed=1)
    assert np.all(fc.point == 5.0)
    assert np.all(fc.lower == 5.0)
    assert np.all(fc.upper == 5.0)


def test_alpha_recovery_on_long_sample(ann_series):
    fitted = fit(ann_series, EtsSpec("A", "N", "N"))
    assert 0.6 <= fitted.params.alpha <= 0.8


def test_mnn_rejects_zero():
    series = make_series([1.0, 2.0, 0.0] + [1.5] * 30)
    with pytest.raises(NonPositiveData):
        fit(series, EtsSpec("M", "N", "N"))


def test_too_short_raises():
    series = make_series([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    with pytest.raises(TooShort):
        fit(series, EtsSpec("A", "A", "N"))  # needs 5 + 4 observations


def test_fit_deterministic(monthly_mam_series):
    a = fit(monthly_mam_series, EtsSpec("M", "A", "M", 12))
    b = fit(monthly_mam_series, EtsSpec("M", "A", "M", 12))
    assert a.log_likelihood == b.log_likelihood
    assert a.params.alpha == b.params.alpha
    assert np.array_equal(a.residuals, b.residuals)


def test_optimizer_never_worse_than_heuristic(monthly_mam_series):
    from etsselect.ets.fit import _codes, _encode, heuristic_params
    from etsselect.ets import optim

    spec = EtsSpec("M", "A", "M", 12)
    y = monthly_mam_series.values
    scale = np.abs(y).mean()
    ys = y / scale
    start = heuristic_params(ys, spec)
    z0 = _encode(start, spec)
    error, trend, season = _codes(spec)
    f0 = optim._objective(z0, ys, 12, error, trend, season, True, False, True)
    fitted = fit(monthly_mam_series, spec)
    nll_fit = -(fitted.log_likelihood + len(y) * np.log(scale))
    assert nll_fit <= f0 + 1e-9


def test_aicc_exceeds_aic_and_gap_shrinks():
    spec = EtsSpec("A", "N", "N")
    params = EtsParams(alpha=0.5, level0=50.0)
    short = simulate(spec, params, n=30, noise_sd=2.0, seed=9)
    long = simulate(spec, params, n=3000, noise_sd=2.0, seed=9)
    f_short = fit(short, spec)
    f_long = fit(long, spec)
    assert f_short.aicc > f_short.aic
    assert f_long.aicc > f_long.aic
    assert (f_long.aicc - f_long.aic) < (f_short.aicc - f_short.aic)
    assert (f_long.aicc - f_long.aic) < 0.01


def test_residual_length_matches():
    series = make_series(np.sin(np.arange(40)) + 10.0)
    fitted = fit(series, EtsSpec("A", "N", "N"))
    assert fitted.residuals.shape == (40,)
    assert fitted.n_params == 3


# forecast shapes and structure
# ------------------------------------------------------------------------------
def _fitted_from(spec_name, period, params, n=120, noise=1.0, seed=4):
    spec = parse_spec(spec_name, period)
    series = simulate(spec, params, n=n, noise_sd=noise, seed=seed)
    return fit(series, spec)


def test_flat_forecast_ann_mnn():
    f_a = _fitted_from("ANN", 1, EtsParams(alpha=0.4, level0=30.0))
    fc = forecast(f_a, h=10, n_paths=100, seed=0)
    assert np.allclose(fc.point, fc.point[0])
    f_m = _fitted_from("MNN", 1, EtsParams(alpha=0.4, level0=30.0), noise=0.02)
    fc = forecast(f_m, h=10, n_paths=100, seed=0)
    assert np.allclose(fc.point, fc.point[0])


def test_aan_forecast_affine():
    f = _fitted_from("AAN", 1, EtsParams(alpha=0.4, level0=10.0, beta=0.05, trend0=0.5))
    fc = forecast(f, h=12, n_paths=100, seed=0)
    diffs = np.diff(fc.point)
    assert np.allclose(diffs, diffs[0], atol=1e-9)


def test_aadn_forecast_damps_geometrically():
    # direct recursion oracle: increments shrink by exactly phi each step
    spec = EtsSpec("A", "Ad", "N")
    params = EtsParams(alpha=0.3, level0=50.0, beta=0.05, trend0=2.0, phi=0.9)
    fitted = FittedEts(
        spec=spec, params=params, residuals=np.zeros(10), fitted=np.zeros(10),
        log_likelihood=0.0, n_params=6, aic=0.0, aicc=0.0, bic=0.0, sigma=1.0,
        final_level=50.0, final_trend=2.0, final_seasonal=np.zeros(1), n_obs=10,
    )
    fc = forecast(fitted, h=10, n_paths=10, seed=0)
    diffs = np.diff(fc.point)
    ratios = diffs[1:] / diffs[:-1]
    assert np.allclose(ratios, 0.9, atol=1e-9)
    expected_first = 50.0 + 0.9 * 2.0
    assert abs(fc.point[0] - expected_first) < 1e-9


def test_interval_width_monotone_additive():
    f = _fitted_from("ANN", 1, EtsParams(alpha=0.5, level0=100.0), n=300, noise=4.0)
    fc = forecast(f, h=12, confidence=0.95, n_paths=5000, seed=6)
    widths = fc.upper - fc.lower
    # tolerance: one quantile-estimation standard error per bound
    per_h_sd = f.sigma * np.sqrt(1 + np.arange(12) * f.params.alpha ** 2)
    z = 1.959963984540054
    phi_z = np.exp(-z * z / 2) / np.sqrt(2 * np.pi)
    tol = np.sqrt(2 * 0.975 * 0.025 / 5000) / phi_z * per_h_sd
    assert np.all(np.diff(widths) >= -tol[1:])


def test_forecast_deterministic(monthly_mam_series):
    fitted = fit(monthly_mam_series, EtsSpec("M", "A", "M", 12))
    a = forecast(fitted, h=18, n_paths=500, seed=42)
    b = forecast(fitted, h=18, n_paths=500, seed=42)
    assert np.array_equal(a.lower, b.lower) and np.array_equal(a.upper, b.upper)


def test_forecast_bounds_ordered(monthly_mam_series):
    fitted = fit(monthly_mam_series, EtsSpec("M", "A", "M", 12))
    fc = forecast(fitted, h=18, n_paths=500, seed=1)
    assert np.all(fc.lower <= fc.upper)
    assert fc.horizon == 18 and fc.alpha_level == pytest.approx(0.05)
