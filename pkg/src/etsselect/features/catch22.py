"""The 22 canonical distribution/correlation/scaling statistics.

All operate on the z-scored series (sample sd).  Definitions follow the
published canonical forms; where a reference implementation leaves a tie or
split rule open, the rule used here is stated in the docstring and pinned by
tests.  Degenerate inputs produce NaN and are sanitized by the extractor.
"""

import numpy as np
from numba import njit
from scipy.interpolate import LSQUnivariateSpline

from .acf import acf


def _zscore(y: np.ndarray):
    y = np.asarray(y, dtype=float)
    sd = y.std(ddof=1) if y.size > 1 else 0.0
    if sd <= 0:
        return None
    return (y - y.mean()) / sd


def _first_zero_ac(rho: np.ndarray) -> int:
    """Smallest lag with non-positive autocorrelation (cap = len(rho))."""
    for i, r in enumerate(rho):
        if not np.isfinite(r) or r <= 0.0:
            return i + 1
    return rho.size


def histogram_mode(z: np.ndarray, n_bins: int) -> float:
    """Center of the fullest equal-width bin; ties resolve to the lowest bin."""
    lo, hi = z.min(), z.max()
    if hi <= lo:
        return float(z[0])
    edges = np.linspace(lo, hi, n_bins + 1)
    counts, _ = np.histogram(z, bins=edges)
    centers = (edges[:-1] + edges[1:]) / 2.0
    return float(centers[np.argmax(counts)])


def binarystats_mean_longstretch1(z: np.ndarray) -> float:
    """Longest run of consecutive values above the mean."""
    above = z > 0.0
    best = run = 0
    for a in above:
        run = run + 1 if a else 0
        best = max(best, run)
    return float(best)


def binarystats_diff_longstretch0(z: np.ndarray) -> float:
    """Longest run of consecutive decreases."""
    dec = np.diff(z) < 0.0
    best = run = 0
    for d in dec:
        run = run + 1 if d else 0
        best = max(best, run)
    return float(best)


def outlier_include_mdrmd(z: np.ndarray, positive: bool) -> float:
    """Median relative position of threshold-exceeding events, medianed over
    thresholds (step 0.01 sd) that keep more than 2% of the points."""
    w = z if positive else -z
    n = w.size
    top = w.max()
    if top < 0.0:
        return np.nan
    thresholds = np.arange(0.0, top + 1e-12, 0.01)
    rel_medians = []
    kept_pct = []
    for th in thresholds:
        r = np.nonzero(w >= th)[0] + 1
        if r.size == 0:
            rel_medians.append(np.nan)
            kept_pct.append(0.0)
            continue
        rel_medians.append(np.median(r) / (n / 2.0) - 1.0)
        kept_pct.append((r.size - 1) / (n - 1) * 100.0)
    kept_pct = np.asarray(kept_pct)
    keep = np.nonzero(kept_pct > 2.0)[0]
    if keep.size == 0:
        return np.nan
    mj = keep[-1]
    return float(np.median(np.asarray(rel_medians)[: mj + 1]))


def f1ecac(rho: np.ndarray) -> float:
    """Interpolated lag where the ACF first drops below 1/e."""
    thresh = 1.0 / np.e
    prev = 1.0
    for i, r in enumerate(rho):
        if not np.isfinite(r):
            break
        if r < thresh:
            slope = r - prev
            if slope == 0.0:
                return float(i + 1)
            return float(i + (thresh - prev) / slope)
        prev = r
    return float(rho.size + 1)


def firstmin_ac(rho: np.ndarray) -> float:
    """Lag of the first local minimum of the ACF."""
    full = np.concatenate([[1.0], rho[np.isfinite(rho)]])
    for lag in range(1, full.size - 1):
        if full[lag] < full[lag - 1] and full[lag] < full[lag + 1]:
            return float(lag)
    return float(full.size)


def _welch_rect(z: np.ndarray):
    """One-segment rectangular-window power spectrum on an angular grid."""
    n = z.size
    nfft = int(2 ** np.ceil(np.log2(n)))
    f = np.fft.rfft(z, nfft)
    s = (np.abs(f) ** 2) / (n * 2.0 * np.pi)
    s[1:-1] *= 2.0
    w = 2.0 * np.pi * np.arange(s.size) / nfft
    return s, w


def welch_area_5_1(z: np.ndarray) -> float:
    """Integrated power over the lowest fifth of frequencies."""
    s, w = _welch_rect(z)
    dw = w[1] - w[0]
    return float(np.sum(s[: s.size // 5]) * dw)


def welch_centroid(z: np.ndarray) -> float:
    """Angular frequency splitting the cumulative spectrum in half."""
    s, w = _welch_rect(z)
    cs = np.cumsum(s)
    if cs[-1] <= 0:
        return np.nan
    idx = int(np.searchsorted(cs, cs[-1] / 2.0))
    return float(w[min(idx, w.size - 1)])


def local_simple_mean_stderr(z: np.ndarray, train: int = 3) -> float:
    """Sd of residuals when each value is forecast by the previous
    `train`-point mean."""
    n = z.size
    if n <= train + 1:
        return np.nan
    means = np.convolve(z, np.ones(train) / train, mode="valid")[:-1]
    res = z[train:] - means
    return float(res.std(ddof=1))


def local_simple_mean_tauresrat(z: np.ndarray, rho: np.ndarray) -> float:
    """Ratio of ACF first-zero lags: naive-forecast residuals vs the series."""
    res = np.diff(z)
    tau_res = _first_zero_ac(acf(res, res.size - 1))
    tau_y = _first_zero_ac(rho)
    if tau_y == 0:
        return np.nan
    return float(tau_res / tau_y)


def trev_1_num(z: np.ndarray) -> float:
    """Mean cubed successive difference (time-reversal asymmetry)."""
    return float(np.mean(np.diff(z) ** 3))


def histogram_ami_even_2_5(z: np.ndarray) -> float:
    """Automutual information at lag 2 on a 5x5 even-width joint histogram."""
    tau, n_bins = 2, 5
    if z.size <= tau + 1:
        return np.nan
    edges = np.linspace(z.min() - 0.1, z.max() + 0.1, n_bins + 1)
    a = np.clip(np.digitize(z[:-tau], edges) - 1, 0, n_bins - 1)
    b = np.clip(np.digitize(z[tau:], edges) - 1, 0, n_bins - 1)
    joint = np.zeros((n_bins, n_bins))
    for i, j in zip(a, b):
        joint[i, j] += 1.0
    joint /= joint.sum()
    pi = joint.sum(axis=1)
    pj = joint.sum(axis=0)
    ami = 0.0
    for i in range(n_bins):
        for j in range(n_bins):
            if joint[i, j] > 0:
                ami += joint[i, j] * np.log(joint[i, j] / (pi[i] * pj[j]))
    return float(ami)


def auto_mi_stats_gaussian_fmmi(rho: np.ndarray, n: int) -> float:
    """Lag of the first local minimum of the Gaussian automutual information
    -0.5 log(1 - rho^2) over lags 1..min(40, n/2)."""
    tau_max = int(min(40, np.ceil(n / 2.0)))
    r = rho[:tau_max]
    r = r[np.isfinite(r)]
    if r.size < 3:
        return np.nan
    r2 = np.minimum(r ** 2, 1.0 - 1e-12)
    ami = -0.5 * np.log(1.0 - r2)
    for i in range(1, ami.size - 1):
        if ami[i] < ami[i - 1] and ami[i] < ami[i + 1]:
            return float(i + 1)
    return float(ami.size)


def hrv_pnn40(z: np.ndarray) -> float:
    """Share of successive differences exceeding 0.04 sd."""
    d = np.abs(np.diff(z))
    return float(np.mean(d > 0.04))


def _symbolize_terciles(x: np.ndarray) -> np.ndarray:
    th = np.quantile(x, [1.0 / 3.0, 2.0 / 3.0])
    sym = np.zeros(x.size, dtype=np.int64)
    sym[x > th[0]] = 1
    sym[x > th[1]] = 2
    return sym


def motif_three_quantile_hh(z: np.ndarray) -> float:
    """Entropy of adjacent symbol pairs after tercile symbolization."""
    sym = _symbolize_terciles(z)
    pairs = np.zeros((3, 3))
    for i in range(sym.size - 1):
        pairs[sym[i], sym[i + 1]] += 1.0
    total = pairs.sum()
    if total <= 0:
        return np.nan
    p = pairs / total
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def transition_matrix_3ac_sumdiagcov(z: np.ndarray, rho: np.ndarray) -> float:
    """Trace of the column covariance of the tercile transition matrix on the
    ACF-first-zero downsampled series."""
    tau = max(_first_zero_ac(rho), 1)
    down = z[::tau]
    if down.size < 4:
        return np.nan
    sym = _symbolize_terciles(down)
    t_mat = np.zeros((3, 3))
    for i in range(sym.size - 1):
        t_mat[sym[i], sym[i + 1]] += 1.0
    t_mat /= sym.size - 1
    cov = np.cov(t_mat.T, ddof=1)
    return float(np.trace(cov))


def embed2_dist_expfit_meandiff(z: np.ndarray, rho: np.ndarray) -> float:
    """Mean |histogram - exponential fit| of successive distances in the
    (y_t, y_{t+tau}) embedding, tau = ACF first zero capped at n/10."""
    n = z.size
    tau = _first_zero_ac(rho)
    tau = int(min(max(tau, 1), max(n // 10, 1)))
    if n - tau - 1 < 4:
        return np.nan
    a = z[: n - tau]
    b = z[tau:]
    d = np.sqrt(np.diff(a) ** 2 + np.diff(b) ** 2)
    lam = d.mean()
    if lam <= 0:
        return np.nan
    sd = d.std()
    if sd <= 0:
        return np.nan
    bin_width = 3.5 * sd / d.size ** (1.0 / 3.0)
    n_bins = max(int(np.ceil((d.max() - d.min()) / bin_width)), 1)
    counts, edges = np.histogram(d, bins=n_bins)
    centers = (edges[:-1] + edges[1:]) / 2.0
    width = edges[1] - edges[0]
    density = counts / (counts.sum() * width)
    fit = np.exp(-centers / lam) / lam
    return float(np.mean(np.abs(density - fit)))


@njit(cache=True)
def _linfit_sse(x, y):
    n = x.shape[0]
    sx = sy = sxx = sxy = 0.0
    for i in range(n):
        sx += x[i]
        sy += y[i]
        sxx += x[i] * x[i]
        sxy += x[i] * y[i]
    det = n * sxx - sx * sx
    if abs(det) < 1e-300:
        mean = sy / n
        sse = 0.0
        for i in range(n):
            sse += (y[i] - mean) ** 2
        return sse
    slope = (n * sxy - sx * sy) / det
    intercept = (sy - slope * sx) / n
    sse = 0.0
    for i in range(n):
        r = y[i] - (slope * x[i] + intercept)
        sse += r * r
    return sse


@njit(cache=True)
def _fluct_scales(cs, taus, dfa):
    """Fluctuation magnitude per scale: rms linear-detrend residual (dfa) or
    rms residual range (rescaled-range flavor) over tiled buffers."""
    ntt = taus.shape[0]
    n = cs.shape[0]
    fvals = np.zeros(ntt)
    for k in range(ntt):
        tau = taus[k]
        n_buf = n // tau
        sx = tau * (tau + 1.0) / 2.0
        sxx = tau * (tau + 1.0) * (2.0 * tau + 1.0) / 6.0
        det = tau * sxx - sx * sx
        acc = 0.0
        for b_i in range(n_buf):
            base = b_i * tau
            sy = sxy = 0.0
            for j in range(tau):
                v = cs[base + j]
                sy += v
                sxy += (j + 1.0) * v
            slope = (tau * sxy - sx * sy) / det
            intercept = (sy - slope * sx) / tau
            if dfa:
                for j in range(tau):
                    r = cs[base + j] - (slope * (j + 1.0) + intercept)
                    acc += r * r
            else:
                rmin = 1e300
                rmax = -1e300
                for j in range(tau):
                    r = cs[base + j] - (slope * (j + 1.0) + intercept)
                    if r < rmin:
                        rmin = r
                    if r > rmax:
                        rmax = r
                acc += (rmax - rmin) ** 2
        if dfa:
            fvals[k] = np.sqrt(acc / (n_buf * tau))
        else:
            fvals[k] = np.sqrt(acc / n_buf)
    return fvals


def _fluct_anal_prop_r1(z: np.ndarray, lag: int, how: str) -> float:
    """Two-regime scaling split for fluctuation analysis; returns the share
    of scales assigned to the first regime (first split minimizing total
    squared fit error, at least 6 scales per side)."""
    cs = np.cumsum(z[::lag])
    n = cs.size
    if n < 12:
        return np.nan
    taus = np.unique(np.round(np.exp(
        np.linspace(np.log(5.0), np.log(n / 2.0), 50))).astype(np.int64))
    taus = taus[(taus >= 5) & (taus <= n // 2)]
    ntt = taus.size
    if ntt < 12:
        return np.nan
    fvals = _fluct_scales(cs, taus, how == "dfa")
    logtt = np.log(taus.astype(float))
    logff = np.log(np.maximum(fvals, 1e-12))
    min_points = 6
    best_sse, best_i = np.inf, min_points
    for i in range(min_points, ntt - min_points + 1):
        sse = _linfit_sse(logtt[:i], logff[:i]) + _linfit_sse(logtt[i - 1:], logff[i - 1:])
        if sse < best_sse:
            best_sse, best_i = sse, i
    return float(best_i / ntt)


def periodicity_wang(z: np.ndarray) -> float:
    """First ACF peak (after a trough, at least 0.01 above it, positive) of
    the cubic-spline-detrended series; 0 when no such peak exists."""
    n = z.size
    if n >= 12:
        x = np.arange(n, dtype=float)
        knots = [n / 3.0, 2.0 * n / 3.0]
        try:
            spline = LSQUnivariateSpline(x, z, knots, k=3)
            detr = z - spline(x)
        except Exception:
            detr = z
    else:
        detr = z
    acmax = int(np.ceil(n / 3.0))
    rho = acf(detr, acmax)
    full = np.concatenate([[1.0], rho])
    troughs, peaks = [], []
    for i in range(1, full.size - 1):
        slope_in = full[i] - full[i - 1]
        slope_out = full[i + 1] - full[i]
        if slope_in < 0 and slope_out > 0:
            troughs.append(i)
        elif slope_in > 0 and slope_out < 0:
            peaks.append(i)
    for ip in peaks:
        before = [t for t in troughs if t < ip]
        if not before:
            continue
        it = before[-1]
        if full[ip] - full[it] >= 0.01 and full[ip] > 0:
            return float(ip)
    return 0.0


def catch22_features(y: np.ndarray) -> dict[str, float]:
    """All 22 statistics in manifest order (indices 38-59)."""
    z = _zscore(y)
    if z is None:
        return {name: np.nan for name in CATCH22_NAMES}
    n = z.size
    rho = acf(z, n - 1)
    return {
        "histogram_mode5": histogram_mode(z, 5),
        "histogram_mode10": histogram_mode(z, 10),
        "binaryStats_mean_longStretch1": binarystats_mean_longstretch1(z),
        "outlierInclude_p_001_mdrmd": outlier_include_mdrmd(z, True),
        "outlierInclude_n_001_mdrmd": outlier_include_mdrmd(z, False),
        "f1ecac": f1ecac(rho),
        "firstmin_ac": firstmin_ac(rho),
        "summaries_welch_rect_area_5_1": welch_area_5_1(z),
        "summaries_welch_rect_centroid": welch_centroid(z),
        "localSimple_mean3_stdErr": local_simple_mean_stderr(z),
        "trev_1_num": trev_1_num(z),
        "histogramAMI_even_2_5": histogram_ami_even_2_5(z),
        "autoMutualInfoStats_40_gaussian_fmmi": auto_mi_stats_gaussian_fmmi(rho, n),
        "hrv_classic_pnn40": hrv_pnn40(z),
        "binaryStats_diff_longStretch0": binarystats_diff_longstretch0(z),
        "motifThree_quantile_hh": motif_three_quantile_hh(z),
        "localSimple_mean1_tauresrat": local_simple_mean_tauresrat(z, rho),
        "embed2_dist_tau_d_expFit_meanDiff": embed2_dist_expfit_meandiff(z, rho),
        "fluctAnal_2_dfa_50_1_2_logi_prop_r1": _fluct_anal_prop_r1(z, 2, "dfa"),
        "fluctAnal_2_rsrangefit_50_1_logi_prop_r1": _fluct_anal_prop_r1(z, 1, "rsrange"),
        "transitionMatrix_3ac_sumDiagCov": transition_matrix_3ac_sumdiagcov(z, rho),
        "periodicityWang_th0_01": periodicity_wang(z),
    }


CATCH22_NAMES = (
    "histogram_mode5",
    "histogram_mode10",
    "binaryStats_mean_longStretch1",
    "outlierInclude_p_001_mdrmd",
    "outlierInclude_n_001_mdrmd",
    "f1ecac",
    "firstmin_ac",
    "summaries_welch_rect_area_5_1",
    "summaries_welch_rect_centroid",
    "localSimple_mean3_stdErr",
    "trev_1_num",
    "histogramAMI_even_2_5",
    "autoMutualInfoStats_40_gaussian_fmmi",
    "hrv_classic_pnn40",
    "binaryStats_diff_longStretch0",
    "motifThree_quantile_hh",
    "localSimple_mean1_tauresrat",
    "embed2_dist_tau_d_expFit_meanDiff",
    "fluctAnal_2_dfa_50_1_2_logi_prop_r1",
    "fluctAnal_2_rsrangefit_50_1_logi_prop_r1",
    "transitionMatrix_3ac_sumDiagCov",
    "periodicityWang_th0_01",
)
