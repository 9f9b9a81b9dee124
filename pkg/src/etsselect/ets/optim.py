"""Derivative-free likelihood optimization.

Bounded smoothing weights are mapped through logistic transforms so the
search space is unconstrained; initial states enter untransformed (the data
is pre-scaled to unit magnitude by the caller, so every coordinate is O(1)).
A compact Nelder-Mead lives here rather than scipy's because the objective
is a numba kernel: keeping the whole loop jitted avoids ~50us of Python
dispatch per evaluation, which dominates at 2000 evaluations x 15 models.
"""

import numpy as np
from numba import njit

from .engine import BIG, _neg_loglik

ALPHA_LO = 1e-4
ALPHA_HI = 1.0 - 1e-4
PHI_LO = 0.8
PHI_HI = 0.98


@njit(cache=True)
def _sigmoid(z):
    if z >= 0.0:
        return 1.0 / (1.0 + np.exp(-z))
    ez = np.exp(z)
    return ez / (1.0 + ez)


@njit(cache=True)
def _decode(z, m, has_trend, damped, has_season, out_seasonal):
    """Map unconstrained coordinates to (alpha, beta, gamma, phi, level0,
    trend0) and fill out_seasonal; returns ok=False when the dependent
    seasonal state breaks positivity (multiplicative case handled by caller).
    """
    alpha = ALPHA_LO + (ALPHA_HI - ALPHA_LO) * _sigmoid(z[0])
    idx = 1
    beta = 0.0
    if has_trend:
        beta = alpha * _sigmoid(z[idx])
        idx += 1
    gamma = 0.0
    if has_season:
        gamma = (1.0 - alpha) * _sigmoid(z[idx])
        idx += 1
    phi = 1.0
    if damped:
        phi = PHI_LO + (PHI_HI - PHI_LO) * _sigmoid(z[idx])
        idx += 1
    level0 = z[idx]
    idx += 1
    trend0 = 0.0
    if has_trend:
        trend0 = z[idx]
        idx += 1
    if has_season:
        acc = 0.0
        for j in range(m - 1):
            out_seasonal[j] = z[idx + j]
            acc += z[idx + j]
        out_seasonal[m - 1] = -acc  # additive closure; caller shifts for mult
    return alpha, beta, gamma, phi, level0, trend0


@njit(cache=True)
def _objective(z, y, m, error, trend, season, has_trend, damped, has_season):
    seasonal = np.zeros(max(m, 1))
    alpha, beta, gamma, phi, level0, trend0 = _decode(
        z, m, has_trend, damped, has_season, seasonal
    )
    if has_season and season == 2:
        # multiplicative closure: states average to 1 instead of summing to 0
        for j in range(m):
            seasonal[j] += 1.0
        for j in range(m):
            if seasonal[j] <= 0.0:
                return BIG
    return _neg_loglik(
        y, m, error, trend, season, alpha, beta, gamma, phi,
        level0, trend0, seasonal,
    )


@njit(cache=True)
def _nelder_mead(z0, y, m, error, trend, season, has_trend, damped, has_season,
                 max_evals, diam_tol):
    """Standard simplex search; returns (z_best, f_best, n_evals)."""
    d = z0.shape[0]
    n_vert = d + 1
    simplex = np.zeros((n_vert, d))
    fvals = np.zeros(n_vert)
    for i in range(n_vert):
        for j in range(d):
            simplex[i, j] = z0[j]
        if i > 0:
            step = 0.25 if abs(z0[i - 1]) < 1.0 else 0.25 * abs(z0[i - 1])
            simplex[i, i - 1] += step
        fvals[i] = _objective(simplex[i], y, m, error, trend, season,
                              has_trend, damped, has_season)
    evals = n_vert

    while evals < max_evals:
        order = np.argsort(fvals)
        simplex = simplex[order]
        fvals = fvals[order]

        diam = 0.0
        for i in range(1, n_vert):
            for j in range(d):
                diff = abs(simplex[i, j] - simplex[0, j])
                if diff > diam:
                    diam = diff
        if diam < diam_tol:
            break

        centroid = np.zeros(d)
        for i in range(n_vert - 1):
            for j in range(d):
                centroid[j] += simplex[i, j]
        for j in range(d):
            centroid[j] /= n_vert - 1

        worst = simplex[n_vert - 1]
        refl = centroid + (centroid - worst)
        f_refl = _objective(refl, y, m, error, trend, season,
                            has_trend, damped, has_season)
        evals += 1

        if f_refl < fvals[0]:
            # try expansion
            exp_pt = centroid + 2.0 * (centroid - worst)
            f_exp = _objective(exp_pt, y, m, error, trend, season,
                               has_trend, damped, has_season)
            evals += 1
            if f_exp < f_refl:
                simplex[n_vert - 1] = exp_pt
                fvals[n_vert - 1] = f_exp
            else:
                simplex[n_vert - 1] = refl
                fvals[n_vert - 1] = f_refl
        elif f_refl < fvals[n_vert - 2]:
            simplex[n_vert - 1] = refl
            fvals[n_vert - 1] = f_refl
        else:
            if f_refl < fvals[n_vert - 1]:
                contr = centroid + 0.5 * (refl - centroid)
            else:
                contr = centroid + 0.5 * (worst - centroid)
            f_contr = _objective(contr, y, m, error, trend, season,
                                 has_trend, damped, has_season)
            evals += 1
            if f_contr < min(f_refl, fvals[n_vert - 1]):
                simplex[n_vert - 1] = contr
                fvals[n_vert - 1] = f_contr
            else:
                # shrink toward the best vertex
                for i in range(1, n_vert):
                    for j in range(d):
                        simplex[i, j] = simplex[0, j] + 0.5 * (simplex[i, j] - simplex[0, j])
                    fvals[i] = _objective(simplex[i], y, m, error, trend, season,
                                          has_trend, damped, has_season)
                evals += n_vert - 1

    best = 0
    for i in range(1, n_vert):
        if fvals[i] < fvals[best]:
            best = i
    return simplex[best].copy(), fvals[best], evals


def logit(p: float) -> float:
    p = min(max(p, 1e-12), 1.0 - 1e-12)
    return float(np.log(p / (1.0 - p)))
