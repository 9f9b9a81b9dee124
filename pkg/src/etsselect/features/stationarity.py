"""Unit-root statistics, volatility diagnostics, and assorted shape features.

Estimator choices follow the common textbook forms: Bartlett-kernel long-run
variances with the short lag rule trunc(4 * (n/100)^0.25), Yule-Walker
pre-whitening with AIC order selection, and a budgeted grid fit for the
auxiliary GARCH(1, 1).
"""

import numpy as np
from numba import njit
from scipy.special import gammaln

from .acf import acf


def _lrv_lags(n: int) -> int:
    return int(np.trunc(4.0 * (n / 100.0) ** 0.25))


def _bartlett_lrv(u: np.ndarray, lags: int) -> float:
    n = u.size
    g0 = float(np.dot(u, u)) / n
    lrv = g0
    for k in range(1, lags + 1):
        gk = float(np.dot(u[k:], u[:-k])) / n
        lrv += 2.0 * (1.0 - k / (lags + 1.0)) * gk
    return lrv


def kpss_stat(y: np.ndarray) -> float:
    """Level-stationarity statistic: small under stationarity, grows with a
    wandering mean."""
    y = np.asarray(y, dtype=float)
    n = y.size
    if n < 3:
        return np.nan
    u = y - y.mean()
    s = np.cumsum(u)
    lrv = _bartlett_lrv(u, _lrv_lags(n))
    if lrv <= 0:
        return np.nan
    return float(np.sum(s ** 2) / (n ** 2 * lrv))


def pp_stat(y: np.ndarray) -> float:
    """Z-alpha unit-root statistic from the AR(1)-with-constant regression:
    large negative rejects a unit root, near zero is consistent with one."""
    y = np.asarray(y, dtype=float)
    n = y.size - 1
    if n < 4:
        return np.nan
    y0, y1 = y[:-1], y[1:]
    if np.var(y0) <= 0:
        return np.nan
    x = np.column_stack([np.ones(n), y0])
    coef, *_ = np.linalg.lstsq(x, y1, rcond=None)
    u = y1 - x @ coef
    rho = coef[1]
    s2 = float(np.dot(u, u)) / (n - 2)
    g0 = float(np.dot(u, u)) / n
    lam2 = _bartlett_lrv(u, _lrv_lags(n))
    try:
        xtx_inv = np.linalg.inv(x.T @ x)
    except np.linalg.LinAlgError:
        return np.nan
    var_rho = s2 * xtx_inv[1, 1]
    if lam2 <= 0 or var_rho <= 0 or s2 <= 0:
        return np.nan
    return float(n * (rho - 1.0) - 0.5 * (n ** 2 * var_rho / s2) * (lam2 - g0))


def arch_r2(x: np.ndarray, lags: int = 12) -> float:
    """R-squared of squared values regressed on their own lags (12, shrunk
    on short series so the regression keeps residual degrees of freedom)."""
    x = np.asarray(x, dtype=float)
    x = x - x.mean()
    x2 = x ** 2
    n = x2.size
    lags = min(lags, n // 4)
    if lags < 1:
        return np.nan
    rows = n - lags
    X = np.ones((rows, lags + 1))
    for k in range(1, lags + 1):
        X[:, k] = x2[lags - k: n - k]
    target = x2[lags:]
    coef, *_ = np.linalg.lstsq(X, target, rcond=None)
    resid = target - X @ coef
    tss = float(np.sum((target - target.mean()) ** 2))
    if tss <= 0:
        return np.nan
    return float(1.0 - np.sum(resid ** 2) / tss)


def _sumsq_acf12(x: np.ndarray) -> float:
    r = acf(x, 12)
    valid = r[np.isfinite(r)]
    return float(np.sum(valid ** 2)) if valid.size else np.nan


def prewhiten(y: np.ndarray, max_order: int | None = None) -> np.ndarray:
    """Residuals of a Yule-Walker AR fit with AIC-selected order."""
    y = np.asarray(y, dtype=float)
    n = y.size
    yc = y - y.mean()
    var0 = float(np.dot(yc, yc)) / n
    if var0 <= 0 or n < 8:
        return yc
    if max_order is None:
        max_order = int(min(n - 1, 10.0 * np.log10(n)))
    rho = acf(yc, max_order)
    best_aic = n * np.log(var0)
    best_order = 0
    best_coef = np.zeros(0)
    for p in range(1, max_order + 1):
        if not np.all(np.isfinite(rho[:p])):
            break
        R = np.empty((p, p))
        for i in range(p):
            for j in range(p):
                k = abs(i - j)
                R[i, j] = 1.0 if k == 0 else rho[k - 1]
        try:
            coef = np.linalg.solve(R, rho[:p])
        except np.linalg.LinAlgError:
            break
        sigma2 = var0 * (1.0 - float(np.dot(coef, rho[:p])))
        if sigma2 <= 0:
            break
        aic = n * np.log(sigma2) + 2.0 * p
        if aic < best_aic:
            best_aic, best_order, best_coef = aic, p, coef
    if best_order == 0:
        return yc
    p = best_order
    resid = yc[p:].copy()
    for k in range(1, p + 1):
        resid -= best_coef[k - 1] * yc[p - k: n - k]
    return resid


@njit(cache=True)
def _garch_nll(e, a, b, v):
    n = e.shape[0]
    omega = v * (1.0 - a - b)
    sig2 = v
    nll = 0.0
    for t in range(n):
        if sig2 <= 0.0:
            return 1e100
        nll += np.log(sig2) + e[t] * e[t] / sig2
        sig2 = omega + a * e[t] * e[t] + b * sig2
    return 0.5 * nll


def garch_std_residuals(e: np.ndarray) -> np.ndarray:
    """Standardized residuals of a GARCH(1,1) fit by coarse grid search plus
    two local refinements, variance targeting, fixed evaluation budget."""
    e = np.asarray(e, dtype=float)
    e = e - e.mean()
    v = float(np.var(e))
    if v <= 0 or e.size < 12:
        return e
    a_grid = np.linspace(0.02, 0.30, 8)
    b_grid = np.linspace(0.05, 0.95, 10)
    best = (np.inf, 0.05, 0.80)
    for a in a_grid:
        for b in b_grid:
            if a + b >= 0.999:
                continue
            nll = _garch_nll(e, a, b, v)
            if nll < best[0]:
                best = (nll, a, b)
    step_a, step_b = 0.02, 0.05
    for _ in range(2):
        _, a0, b0 = best
        for a in np.linspace(max(1e-4, a0 - step_a), a0 + step_a, 5):
            for b in np.linspace(max(0.0, b0 - step_b), b0 + step_b, 5):
                if a + b >= 0.999:
                    continue
                nll = _garch_nll(e, a, b, v)
                if nll < best[0]:
                    best = (nll, a, b)
        step_a /= 4.0
        step_b /= 4.0
    _, a, b = best
    omega = v * (1.0 - a - b)
    sig2 = np.empty(e.size)
    sig2[0] = v
    for t in range(1, e.size):
        sig2[t] = omega + a * e[t - 1] ** 2 + b * sig2[t - 1]
    return e / np.sqrt(np.maximum(sig2, 1e-300))


def heterogeneity_features(y: np.ndarray) -> dict[str, float]:
    white = prewhiten(y)
    std = garch_std_residuals(white)
    return {
        "arch_acf": _sumsq_acf12(white ** 2),
        "garch_acf": _sumsq_acf12(std ** 2),
        "arch_r2": arch_r2(white),
        "garch_r2": arch_r2(std),
    }


def hurst_rs(y: np.ndarray) -> float:
    """Rescaled-range exponent with the Anis-Lloyd small-sample correction."""
    y = np.asarray(y, dtype=float)
    n = y.size
    if n < 12 or np.var(y) <= 0:
        return np.nan
    sizes = np.unique(np.floor(np.exp(np.linspace(np.log(4), np.log(n // 2), 12))).astype(int))
    sizes = sizes[sizes >= 4]
    log_w, log_rs, log_e = [], [], []
    for w in sizes:
        n_blocks = n // w
        if n_blocks < 1:
            continue
        vals = []
        for b in range(n_blocks):
            seg = y[b * w:(b + 1) * w]
            dev = seg - seg.mean()
            cs = np.cumsum(dev)
            r = cs.max() - cs.min()
            s = seg.std()
            if s > 0:
                vals.append(r / s)
        if not vals:
            continue
        rs = float(np.mean(vals))
        if rs <= 0:
            continue
        log_w.append(np.log(w))
        log_rs.append(np.log(rs))
        log_e.append(np.log(_expected_rs(w)))
    if len(log_w) < 3:
        return np.nan
    corrected = np.asarray(log_rs) - np.asarray(log_e)
    slope = np.polyfit(np.asarray(log_w), corrected, 1)[0]
    return float(0.5 + slope)


def _expected_rs(w: int) -> float:
    i = np.arange(1, w)
    s = float(np.sum(np.sqrt((w - i) / i)))
    if w <= 340:
        front = np.exp(gammaln((w - 1) / 2.0) - gammaln(w / 2.0)) / np.sqrt(np.pi)
    else:
        front = 1.0 / np.sqrt(w * np.pi / 2.0)
    return float((w - 0.5) / w * front * s)


def lumpiness_stability(y: np.ndarray, period: int) -> tuple[float, float]:
    """Tiled-block dispersion in series units: lumpiness is the variance of
    block variances, stability the variance of block means.  Block length is
    the period (10 for non-seasonal series)."""
    y = np.asarray(y, dtype=float)
    n = y.size
    width = period if period > 1 else 10
    n_blocks = n // width
    if n_blocks < 2:
        return np.nan, np.nan
    blocks = y[: n_blocks * width].reshape(n_blocks, width)
    block_vars = blocks.var(axis=1, ddof=1)
    block_means = blocks.mean(axis=1)
    return float(np.var(block_vars, ddof=1)), float(np.var(block_means, ddof=1))


def nonlinearity_stat(y: np.ndarray) -> float:
    """Neural-network-style nonlinearity score: 10 x R-squared of the cubic
    auxiliary regression on the lag-1 linear fit residuals."""
    y = np.asarray(y, dtype=float)
    sd = y.std(ddof=1) if y.size > 1 else 0.0
    if sd <= 0 or y.size < 8:
        return np.nan
    y = (y - y.mean()) / sd
    y0, y1 = y[:-1], y[1:]
    X1 = np.column_stack([np.ones(y0.size), y0])
    coef, *_ = np.linalg.lstsq(X1, y1, rcond=None)
    u = y1 - X1 @ coef
    X2 = np.column_stack([np.ones(y0.size), y0, y0 ** 2, y0 ** 3])
    coef2, *_ = np.linalg.lstsq(X2, u, rcond=None)
    resid = u - X2 @ coef2
    tss = float(np.sum((u - u.mean()) ** 2))
    if tss <= 0:
        return np.nan
    r2 = 1.0 - float(np.sum(resid ** 2)) / tss
    return float(10.0 * r2)


def spectral_entropy(y: np.ndarray) -> float:
    """Shannon entropy of the normalized periodogram, scaled to [0, 1]."""
    y = np.asarray(y, dtype=float)
    n = y.size
    if n < 4 or np.var(y) <= 0:
        return np.nan
    yc = y - y.mean()
    spec = np.abs(np.fft.rfft(yc)) ** 2
    spec = spec[1:]  # drop DC
    total = spec.sum()
    if total <= 0:
        return np.nan
    p = spec / total
    p = p[p > 0]
    if p.size < 2:
        return 0.0
    return float(-np.sum(p * np.log(p)) / np.log(spec.size))


def crossing_points(y: np.ndarray) -> float:
    """Number of consecutive pairs straddling the median."""
    y = np.asarray(y, dtype=float)
    above = y > np.median(y)
    return float(np.sum(above[1:] != above[:-1]))


def flat_spots(y: np.ndarray) -> float:
    """Longest run within one equal-probability decile bin (ties go low)."""
    y = np.asarray(y, dtype=float)
    edges = np.quantile(y, np.linspace(0.1, 0.9, 9))
    bins = np.searchsorted(edges, y, side="left")
    best = run = 1
    for i in range(1, bins.size):
        run = run + 1 if bins[i] == bins[i - 1] else 1
        best = max(best, run)
    return float(best)


def stationarity_features(y: np.ndarray, period: int) -> dict[str, float]:
    lump, stab = lumpiness_stability(y, period)
    out = {
        "ARCH.LM": arch_r2(y),
        "crossing_point": crossing_points(y),
        "entropy": spectral_entropy(y),
        "flat_spots": flat_spots(y),
        "hurst": hurst_rs(y),
        "lumpiness": lump,
        "nonlinearity": nonlinearity_stat(y),
        "stability": stab,
        "unitRoot_kpss": kpss_stat(y),
        "unitRoot_pp": pp_stat(y),
    }
    out.update(heterogeneity_features(y))
    return out
