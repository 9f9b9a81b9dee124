"""Seasonal-trend decomposition and the features that read off it."""

import numpy as np
from numba import njit

from .acf import acf


@njit(cache=True)
def loess_smooth(y, window):
    """Local linear regression with tricube weights over the `window`
    nearest points (by index distance)."""
    n = y.shape[0]
    out = np.zeros(n)
    half = window // 2
    for i in range(n):
        lo = i - half
        hi = i + half
        if lo < 0:
            hi -= lo
            lo = 0
        if hi > n - 1:
            lo -= hi - (n - 1)
            hi = n - 1
        if lo < 0:
            lo = 0
        span = hi - lo
        if span < 1:
            out[i] = y[i]
            continue
        dmax = max(abs(i - lo), abs(hi - i))
        if dmax == 0:
            out[i] = y[i]
            continue
        sw = swx = swy = swxx = swxy = 0.0
        for j in range(lo, hi + 1):
            u = abs(j - i) / (dmax + 1e-12)
            t = 1.0 - u * u * u
            w = t * t * t
            sw += w
            swx += w * j
            swy += w * y[j]
            swxx += w * j * j
            swxy += w * j * y[j]
        det = sw * swxx - swx * swx
        if abs(det) < 1e-300:
            out[i] = swy / sw
        else:
            a = (swxx * swy - swx * swxy) / det
            b = (sw * swxy - swx * swy) / det
            out[i] = a + b * i
    return out


def _next_odd(x: float) -> int:
    k = int(np.ceil(x))
    return k if k % 2 == 1 else k + 1


def decompose(y: np.ndarray, period: int):
    """Trend/seasonal/remainder split.

    Seasonal component is periodic (cycle sub-means of the detrended series),
    trend is a loess smooth of the deseasonalized series, iterated twice.
    Non-seasonal series get a trend-only smooth with a window that widens
    with length so pure noise is not absorbed into the trend.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    if period < 2:
        window = _next_odd(max(11, n / 10))
        trend = loess_smooth(y, min(window, _next_odd(n)))
        seasonal = np.zeros(n)
        return trend, seasonal, y - trend

    t_window = _next_odd(1.5 * period)
    positions = np.arange(n) % period
    trend = np.zeros(n)
    seasonal = np.zeros(n)
    for _ in range(2):
        detrended = y - trend
        means = np.array([detrended[positions == j].mean() for j in range(period)])
        means -= means.mean()
        seasonal = means[positions]
        trend = loess_smooth(y - seasonal, t_window)
    return trend, seasonal, y - trend - seasonal


def _orthonormal_poly(n: int, degree: int) -> np.ndarray:
    """Columns: orthonormal polynomial basis of 1..degree over 1..n (the
    constant column is dropped), signed so the top coefficient is positive."""
    t = np.arange(1.0, n + 1.0)
    cols = [np.ones(n)]
    for d in range(1, degree + 1):
        cols.append(t ** d)
    q, _ = np.linalg.qr(np.column_stack(cols))
    basis = q[:, 1:]
    for j in range(basis.shape[1]):
        if basis[-1, j] < 0:
            basis[:, j] = -basis[:, j]
    return basis


def stl_features(y: np.ndarray, period: int) -> dict[str, float]:
    """Decomposition block: strengths, trend shape, remainder diagnostics,
    seasonal peak/trough.  Strengths are variance ratios (scale-free by
    construction); spike, linearity, and curvature stay in series units."""
    y = np.asarray(y, dtype=float)
    n = y.size
    trend, seasonal, remainder = decompose(y, period)

    var_rem = float(np.var(remainder, ddof=1)) if n > 1 else np.nan
    deseason = y - seasonal
    detrend = y - trend
    var_deseason = float(np.var(deseason, ddof=1)) if n > 1 else np.nan
    var_detrend = float(np.var(detrend, ddof=1)) if n > 1 else np.nan

    trend_strength = np.nan
    if np.isfinite(var_deseason) and var_deseason > 0:
        trend_strength = max(0.0, 1.0 - var_rem / var_deseason)
    if period >= 2:
        seasonal_strength = np.nan
        if np.isfinite(var_detrend) and var_detrend > 0:
            seasonal_strength = max(0.0, 1.0 - var_rem / var_detrend)
        sub = np.array([seasonal[j] for j in range(period)])
        peak = float(np.argmax(sub) + 1)
        trough = float(np.argmin(sub) + 1)
    else:
        seasonal_strength = 0.0
        peak = 0.0
        trough = 0.0

    basis = _orthonormal_poly(n, 2)
    coefs = basis.T @ trend
    linearity = float(coefs[0])
    curvature = float(coefs[1])

    # variance of leave-one-out variances of the remainder
    if n > 2:
        d = (remainder - remainder.mean()) ** 2
        varloo = (d.sum() - d) / (n - 2)
        spike = float(np.var(varloo, ddof=1))
    else:
        spike = np.nan

    r = acf(remainder, 10)
    e_acf1 = r[0]
    valid = r[np.isfinite(r)]
    e_acf10 = float(np.sum(valid ** 2)) if valid.size else np.nan

    return {
        "trend": trend_strength,
        "spike": spike,
        "linearity": linearity,
        "curvature": curvature,
        "e_acf1": e_acf1,
        "e_acf10": e_acf10,
        "seasonal_strength": seasonal_strength,
        "peak": peak,
        "trough": trough,
    }
