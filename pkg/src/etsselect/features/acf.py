"""Autocorrelation-derived features.

Sample ACF uses the n-denominator convention; PACF comes from the
Durbin-Levinson recursion on the sample ACF.  Degenerate inputs (zero
variance, not enough lags) yield NaN here and are sanitized centrally.
"""

import numpy as np


def acf(x: np.ndarray, nlags: int) -> np.ndarray:
    """Sample autocorrelations at lags 1..nlags (NaN-padded when short)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    out = np.full(nlags, np.nan)
    if n < 2:
        return out
    xc = x - x.mean()
    c0 = float(np.dot(xc, xc)) / n
    if c0 <= 0.0:
        return out
    kmax = min(nlags, n - 1)
    if n > 256 and kmax > 16:
        nfft = int(2 ** np.ceil(np.log2(2 * n)))
        f = np.fft.rfft(xc, nfft)
        full = np.fft.irfft(f * np.conj(f), nfft)[: kmax + 1] / n
        out[:kmax] = full[1: kmax + 1] / c0
    else:
        for k in range(1, kmax + 1):
            out[k - 1] = float(np.dot(xc[:-k], xc[k:])) / n / c0
    return out


def pacf(x: np.ndarray, nlags: int) -> np.ndarray:
    """Partial autocorrelations at lags 1..nlags via Durbin-Levinson."""
    rho = acf(x, nlags)
    out = np.full(nlags, np.nan)
    kmax = int(np.sum(np.isfinite(rho)))
    if kmax == 0:
        return out
    phi = np.zeros((kmax + 1, kmax + 1))
    phi[1, 1] = rho[0]
    out[0] = rho[0]
    for k in range(2, kmax + 1):
        num = rho[k - 1] - np.sum(phi[k - 1, 1:k] * rho[k - 2::-1][: k - 1])
        den = 1.0 - np.sum(phi[k - 1, 1:k] * rho[: k - 1])
        if abs(den) < 1e-12:
            break
        phi[k, k] = num / den
        for j in range(1, k):
            phi[k, j] = phi[k - 1, j] - phi[k, k] * phi[k - 1, k - j]
        out[k - 1] = phi[k, k]
    return out


def acf_features(y: np.ndarray, period: int) -> dict[str, float]:
    """The ACF/PACF block: plain, differenced, twice-differenced, seasonal."""
    d1 = np.diff(y)
    d2 = np.diff(y, 2)

    def first_and_sumsq10(x):
        r = acf(x, 10)
        first = r[0] if np.isfinite(r[0]) else np.nan
        valid = r[np.isfinite(r)]
        return first, float(np.sum(valid ** 2)) if valid.size else np.nan

    x1, x10 = first_and_sumsq10(y)
    d1_1, d1_10 = first_and_sumsq10(d1)
    d2_1, d2_10 = first_and_sumsq10(d2)

    def sumsq_pacf5(x):
        p = pacf(x, 5)
        valid = p[np.isfinite(p)]
        return float(np.sum(valid ** 2)) if valid.size else np.nan

    if period > 1:
        seas_r = acf(y, period)
        seas_acf1 = seas_r[period - 1]
        seas_p = pacf(y, period)
        seas_pacf = seas_p[period - 1]
    else:
        seas_acf1 = 0.0
        seas_pacf = 0.0

    return {
        "x_acf1": x1,
        "x_acf10": x10,
        "diff1_acf1": d1_1,
        "diff1_acf10": d1_10,
        "diff2_acf1": d2_1,
        "diff2_acf10": d2_10,
        "seas_acf1": seas_acf1,
        "x_pacf5": sumsq_pacf5(y),
        "diff1x_pacf5": sumsq_pacf5(d1),
        "diff2x_pacf5": sumsq_pacf5(d2),
        "seas_pacf": seas_pacf,
    }
