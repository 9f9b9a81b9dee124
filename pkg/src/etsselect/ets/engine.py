"""State-space recursion kernels.

All kernels are numba-compiled and operate on plain float64 arrays with the
component forms passed as integer codes (error: 1 additive / 2 multiplicative;
trend: 0 none / 1 additive, damping via phi; seasonality: 0/1/2).  Seasonal
states use slot indexing: observation t reads and writes slot t % m, so no
array rotation is needed.

The one-step update mirrors the classic innovations filter: the forecast mean
is formed from the current state, the innovation is additive or relative, and
the state moves toward the de-trended/de-seasonalized observation.
"""

import numpy as np
from numba import njit

TOL = 1e-10
BIG = 1e100

ADD = 1
MUL = 2


@njit(cache=True)
def _forecast_mean(level, trend_b, seas, error, trend, season, phi):
    """One-step forecast mean from the current state; NaN when invalid."""
    if trend == 0:
        q = level
    else:
        q = level + phi * trend_b
    if season == 0:
        mu = q
    elif season == 1:
        mu = q + seas
    else:
        mu = q * seas
    return mu, q


@njit(cache=True)
def _filter(y, m, error, trend, season, alpha, beta, gamma, phi,
            level0, trend0, seasonal0, strict):
    """Run the innovations filter over y.

    Returns (residuals, fitted, final_level, final_trend, final_seasonal, ok).
    With strict=True any state that makes a multiplicative component undefined
    (mu or seasonal <= 0) flags ok=False; with strict=False divisions are
    guarded so residuals are always produced.
    """
    n = y.shape[0]
    residuals = np.zeros(n)
    fitted = np.zeros(n)
    s = seasonal0.copy()
    level = level0
    b = trend0
    ok = True
    for t in range(n):
        slot = t % m
        mu, q = _forecast_mean(level, b, s[slot], error, trend, season, phi)
        if strict and (error == MUL or season == MUL) and mu <= 0.0:
            return residuals, fitted, level, b, s, False
        fitted[t] = mu
        if error == ADD:
            e = y[t] - mu
        else:
            denom = mu if abs(mu) > TOL else (TOL if mu >= 0 else -TOL)
            e = (y[t] - mu) / denom
        residuals[t] = e

        if season == 0:
            p = y[t]
        elif season == 1:
            p = y[t] - s[slot]
        else:
            denom = s[slot] if abs(s[slot]) > TOL else TOL
            p = y[t] / denom
        new_level = q + alpha * (p - q)
        if trend != 0:
            phib = phi * b
            b = phib + (beta / alpha) * ((new_level - level) - phib)
        level = new_level
        if season != 0:
            if season == 1:
                comp = y[t] - q
            else:
                denom = q if abs(q) > TOL else TOL
                comp = y[t] / denom
            s[slot] = s[slot] + gamma * (comp - s[slot])
            if season == MUL and s[slot] <= 0.0:
                if strict:
                    return residuals, fitted, level, b, s, False
                s[slot] = TOL
    return residuals, fitted, level, b, s, ok


@njit(cache=True)
def _neg_loglik(y, m, error, trend, season, alpha, beta, gamma, phi,
                level0, trend0, seasonal0):
    """Concentrated Gaussian negative log-likelihood; BIG when inadmissible."""
    n = y.shape[0]
    s = seasonal0.copy()
    level = level0
    b = trend0
    sum_e2 = 0.0
    sum_log_mu = 0.0
    for t in range(n):
        slot = t % m
        mu, q = _forecast_mean(level, b, s[slot], error, trend, season, phi)
        if error == MUL or season == MUL:
            if mu <= 0.0:
                return BIG
        if error == ADD:
            e = y[t] - mu
        else:
            e = (y[t] - mu) / mu
            sum_log_mu += np.log(abs(mu))
        sum_e2 += e * e

        if season == 0:
            p = y[t]
        elif season == 1:
            p = y[t] - s[slot]
        else:
            if abs(s[slot]) < TOL:
                return BIG
            p = y[t] / s[slot]
        new_level = q + alpha * (p - q)
        if trend != 0:
            phib = phi * b
            b = phib + (beta / alpha) * ((new_level - level) - phib)
        level = new_level
        if season != 0:
            if season == 1:
                comp = y[t] - q
            else:
                if abs(q) < TOL:
                    return BIG
                comp = y[t] / q
            s[slot] = s[slot] + gamma * (comp - s[slot])
            if season == MUL and s[slot] <= 0.0:
                return BIG
    sigma2 = sum_e2 / n
    if sigma2 < 1e-100:
        sigma2 = 1e-100
    nll = 0.5 * n * (np.log(2.0 * np.pi * sigma2) + 1.0)
    if error == MUL:
        nll += sum_log_mu
    if not np.isfinite(nll):
        return BIG
    return nll


@njit(cache=True)
def _simulate(eps, m, error, trend, season, alpha, beta, gamma, phi,
              level0, trend0, seasonal0):
    """Generate a sample path driven by pre-drawn innovations eps.

    Returns (y, ok); ok=False when a multiplicative component hit a
    non-positive mean (caller should resample or reject).
    """
    n = eps.shape[0]
    y = np.zeros(n)
    s = seasonal0.copy()
    level = level0
    b = trend0
    for t in range(n):
        slot = t % m
        mu, q = _forecast_mean(level, b, s[slot], error, trend, season, phi)
        if (error == MUL or season == MUL) and mu <= 0.0:
            return y, False
        if error == ADD:
            yt = mu + eps[t]
        else:
            yt = mu * (1.0 + eps[t])
        y[t] = yt

        if season == 0:
            p = yt
        elif season == 1:
            p = yt - s[slot]
        else:
            if abs(s[slot]) < TOL:
                return y, False
            p = yt / s[slot]
        new_level = q + alpha * (p - q)
        if trend != 0:
            phib = phi * b
            b = phib + (beta / alpha) * ((new_level - level) - phib)
        level = new_level
        if season != 0:
            if season == 1:
                comp = yt - q
            else:
                if abs(q) < TOL:
                    return y, False
                comp = yt / q
            s[slot] = s[slot] + gamma * (comp - s[slot])
            if season == MUL and s[slot] <= 0.0:
                return y, False
    return y, True


@njit(cache=True)
def _mean_path(h, m, error, trend, season, phi, level, trend_b, seasonal, slot0):
    """Zero-innovation forecast path from the post-sample state.

    Along the mean path the level absorbs the damped trend each step, the
    trend decays by phi, and seasonal states are unchanged.
    """
    out = np.zeros(h)
    lvl = level
    b = trend_b
    for t in range(h):
        slot = (slot0 + t) % m
        mu, q = _forecast_mean(lvl, b, seasonal[slot], error, trend, season, phi)
        out[t] = mu
        lvl = q
        b = phi * b
    return out


@njit(cache=True)
def _sample_paths(eps, m, error, trend, season, alpha, beta, gamma, phi,
                  level, trend_b, seasonal, slot0):
    """Simulate future paths (one row of eps per path) from the final state.

    Divisions are guarded rather than rejected: a rare path wandering through
    zero should produce an extreme draw, not poison the whole quantile batch.
    """
    n_paths, h = eps.shape
    out = np.zeros((n_paths, h))
    for p_i in range(n_paths):
        lvl = level
        b = trend_b
        s = seasonal.copy()
        for t in range(h):
            slot = (slot0 + t) % m
            mu, q = _forecast_mean(lvl, b, s[slot], error, trend, season, phi)
            if error == ADD:
                yt = mu + eps[p_i, t]
            else:
                yt = mu * (1.0 + eps[p_i, t])
            out[p_i, t] = yt

            if season == 0:
                pv = yt
            elif season == 1:
                pv = yt - s[slot]
            else:
                denom = s[slot] if abs(s[slot]) > TOL else TOL
                pv = yt / denom
            new_level = q + alpha * (pv - q)
            if trend != 0:
                phib = phi * b
                b = phib + (beta / alpha) * ((new_level - lvl) - phib)
            lvl = new_level
            if season != 0:
                if season == 1:
                    comp = yt - q
                else:
                    denom = q if abs(q) > TOL else TOL
                    comp = yt / denom
                s[slot] = s[slot] + gamma * (comp - s[slot])
    return out
