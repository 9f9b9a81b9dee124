"""Maximum-likelihood estimation for one spec on one series."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import NonPositiveData, TooShort
from . import engine, optim
from .specs import ERROR_CODE, SEASON_CODE, TREND_CODE, EtsParams, EtsSpec, TimeSeries

MAX_EVALS = 2000
DIAM_TOL = 1e-8
N_JITTER = 3
_JITTER_SEED = 1810  # fixed so fit is a pure function of its inputs


@dataclass(frozen=True)
class FittedEts:
    """A spec estimated on a series, with everything needed to forecast."""

    spec: EtsSpec
    params: EtsParams
    residuals: np.ndarray = field(repr=False)
    fitted: np.ndarray = field(repr=False)
    log_likelihood: float
    n_params: int
    aic: float
    aicc: float
    bic: float
    sigma: float
    final_level: float
    final_trend: float
    final_seasonal: np.ndarray = field(repr=False)
    n_obs: int
    degraded: bool = False


def _codes(spec: EtsSpec):
    return ERROR_CODE[spec.error], TREND_CODE[spec.trend], SEASON_CODE[spec.seasonality]


def heuristic_params(values: np.ndarray, spec: EtsSpec) -> EtsParams:
    """Decomposition-based starting point: seasonal sub-means off a centered
    moving average, then level/trend from the first window of the adjusted
    series."""
    y = np.asarray(values, dtype=float)
    n = y.size
    m = spec.period

    seasonal0 = None
    adjusted = y
    if spec.seasonality != "N":
        ma = _centered_ma(y, m)
        valid = np.isfinite(ma)
        if spec.seasonality == "A":
            detr = y[valid] - ma[valid]
        else:
            safe = np.where(np.abs(ma[valid]) > 1e-12, ma[valid], 1e-12)
            detr = y[valid] / safe
        idx = np.nonzero(valid)[0] % m
        seasonal0 = np.zeros(m)
        for j in range(m):
            sel = detr[idx == j]
            if sel.size:
                seasonal0[j] = sel.mean()
            else:
                seasonal0[j] = 0.0 if spec.seasonality == "A" else 1.0
        if spec.seasonality == "A":
            seasonal0 -= seasonal0.mean()
            adjusted = y - seasonal0[np.arange(n) % m]
        else:
            seasonal0 = np.maximum(seasonal0, 1e-6)
            seasonal0 /= seasonal0.mean()
            adjusted = y / seasonal0[np.arange(n) % m]

    w = min(n, max(10, 2 * m))
    level0 = float(adjusted[:w].mean())
    if spec.error == "M" or spec.seasonality == "M":
        if level0 <= 0.0:
            level0 = float(np.abs(y).mean()) or 1.0

    alpha = 0.3
    beta = trend0 = None
    gamma = None
    phi = 1.0
    if spec.trend != "N":
        beta = 0.1 * alpha
        trend0 = float(np.diff(adjusted[:w]).mean()) if w > 1 else 0.0
    if spec.damped:
        phi = 0.9
    if spec.seasonality != "N":
        gamma = 0.1 * (1.0 - alpha)
    return EtsParams(alpha=alpha, level0=level0, beta=beta, gamma=gamma,
                     phi=phi, trend0=trend0, seasonal0=seasonal0)


def _centered_ma(y: np.ndarray, m: int) -> np.ndarray:
    """Centered moving average of window m (2 x m for even m); NaN at edges."""
    n = y.size
    out = np.full(n, np.nan)
    if m % 2 == 1:
        half = m // 2
        if n >= m:
            c = np.convolve(y, np.ones(m) / m, mode="valid")
            out[half:half + c.size] = c
    else:
        if n >= m + 1:
            first = np.convolve(y, np.ones(m) / m, mode="valid")
            c = (first[:-1] + first[1:]) / 2.0
            out[m // 2:m // 2 + c.size] = c
    return out


def _encode(params: EtsParams, spec: EtsSpec) -> np.ndarray:
    z = [optim.logit((params.alpha - optim.ALPHA_LO) / (optim.ALPHA_HI - optim.ALPHA_LO))]
    if spec.trend != "N":
        z.append(optim.logit(params.beta / params.alpha))
    if spec.seasonality != "N":
        z.append(optim.logit(params.gamma / (1.0 - params.alpha)))
    if spec.damped:
        z.append(optim.logit((params.phi - optim.PHI_LO) / (optim.PHI_HI - optim.PHI_LO)))
    z.append(params.level0)
    if spec.trend != "N":
        z.append(params.trend0)
    if spec.seasonality != "N":
        s = params.seasonal0
        base = s[:-1] if spec.seasonality == "A" else s[:-1] - 1.0
        z.extend(base.tolist())
    return np.asarray(z, dtype=float)


def _decode_unscaled(z: np.ndarray, spec: EtsSpec) -> EtsParams:
    m = spec.period
    seasonal = np.zeros(max(m, 1))
    alpha, beta, gamma, phi, level0, trend0 = optim._decode(
        z, m, spec.trend != "N", spec.damped, spec.seasonality != "N", seasonal
    )
    seasonal0 = None
    if spec.seasonality != "N":
        if spec.seasonality == "M":
            seasonal = seasonal + 1.0
        seasonal0 = seasonal
    return EtsParams(
        alpha=float(alpha), level0=float(level0),
        beta=float(beta) if spec.trend != "N" else None,
        gamma=float(gamma) if spec.seasonality != "N" else None,
        phi=float(phi) if spec.damped else 1.0,
        trend0=float(trend0) if spec.trend != "N" else None,
        seasonal0=seasonal0,
    )


def _scale_params(params: EtsParams, spec: EtsSpec, factor: float) -> EtsParams:
    seasonal0 = params.seasonal0
    if seasonal0 is not None and spec.seasonality == "A":
        seasonal0 = seasonal0 * factor
    return EtsParams(
        alpha=params.alpha, level0=params.level0 * factor, beta=params.beta,
        gamma=params.gamma, phi=params.phi,
        trend0=params.trend0 * factor if params.trend0 is not None else None,
        seasonal0=seasonal0,
    )


def fit(series: TimeSeries, spec: EtsSpec) -> FittedEts:
    """Estimate spec on series by Nelder-Mead over the transformed parameter
    space, restarting from jittered copies of the heuristic start.

    Never returns a likelihood below the heuristic's: when no restart improves
    on it the heuristic fit is returned with degraded=True.
    """
    if spec.period != series.period:
        raise ValueError(
            f"spec period {spec.period} does not match series period {series.period}"
        )
    y = series.values
    n = y.size
    k = spec.n_params()
    if n < k + 4:
        raise TooShort(
            f"series {series.id!r} has {n} observations; {spec.name} needs >= {k + 4}"
        )
    if (spec.error == "M" or spec.seasonality == "M") and series.has_nonpositive:
        raise NonPositiveData(
            f"{spec.name} requires strictly positive data (series {series.id!r})"
        )

    scale = float(np.abs(y).mean())
    if scale <= 0.0:
        scale = 1.0
    ys = y / scale

    start = heuristic_params(ys, spec)
    z0 = _encode(start, spec)
    error, trend, season = _codes(spec)
    has_trend = spec.trend != "N"
    has_season = spec.seasonality != "N"
    m = spec.period

    f0 = optim._objective(z0, ys, m, error, trend, season,
                          has_trend, spec.damped, has_season)
    best_z, best_f = z0, f0
    rng = np.random.default_rng(_JITTER_SEED)
    for r in range(1 + N_JITTER):
        zr = z0 if r == 0 else z0 + rng.normal(0.0, 0.3, size=z0.size)
        z_opt, f_opt, _ = optim._nelder_mead(
            zr, ys, m, error, trend, season, has_trend, spec.damped, has_season,
            MAX_EVALS, DIAM_TOL,
        )
        if f_opt < best_f:
            best_z, best_f = z_opt, f_opt

    degraded = not (best_f < f0 - 1e-12) or best_f >= engine.BIG
    if degraded:
        best_z, best_f = z0, f0

    params_scaled = _decode_unscaled(best_z, spec)
    seasonal_arr = (params_scaled.seasonal0 if params_scaled.seasonal0 is not None
                    else np.zeros(1))
    residuals, fitted, fl, fb, fs, _ = engine._filter(
        ys, m, error, trend, season,
        params_scaled.alpha,
        params_scaled.beta if params_scaled.beta is not None else 0.0,
        params_scaled.gamma if params_scaled.gamma is not None else 0.0,
        params_scaled.phi, params_scaled.level0,
        params_scaled.trend0 if params_scaled.trend0 is not None else 0.0,
        seasonal_arr.astype(float), False,
    )

    params = _scale_params(params_scaled, spec, scale)
    if spec.error == "A":
        residuals = residuals * scale
    fitted = fitted * scale
    final_seasonal = fs * scale if spec.seasonality == "A" else fs.copy()

    log_lik = -best_f - n * np.log(scale)
    if best_f >= engine.BIG:
        log_lik = -np.inf
    aic = -2.0 * log_lik + 2.0 * k
    denom = n - k - 1
    aicc = aic + (2.0 * k * (k + 1) / denom if denom > 0 else np.inf)
    bic = -2.0 * log_lik + k * np.log(n)
    sigma = float(np.sqrt(np.mean(residuals ** 2)))

    return FittedEts(
        spec=spec, params=params, residuals=residuals, fitted=fitted,
        log_likelihood=float(log_lik), n_params=k, aic=float(aic),
        aicc=float(aicc), bic=float(bic), sigma=sigma,
        final_level=float(fl * scale), final_trend=float(fb * scale),
        final_seasonal=final_seasonal, n_obs=n, degraded=degraded,
    )
