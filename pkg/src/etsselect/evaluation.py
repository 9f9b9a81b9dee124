"""Forecast and classification evaluation mathematics.

Point metrics are scaled by the in-sample seasonal-naive error (lag s, lag 1
for non-seasonal series), so they are unit-free and comparable across series.
Classification metrics are reported as percentages.  The significance test
follows the small-sample-adjusted equal-accuracy test on a loss differential
with a moving-average-aware variance.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import DataError, DegenerateDifferential, ZeroDenominator


@dataclass(frozen=True)
class EvalRecord:
    """Everything needed to score one series' forecasts."""

    series_id: str
    actuals: np.ndarray = field(repr=False)
    point: np.ndarray = field(repr=False)
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    history: np.ndarray = field(repr=False)
    period: int = 1

    def __post_init__(self):
        h = self.actuals.shape[0]
        for name in ("point", "lower", "upper"):
            if getattr(self, name).shape != (h,):
                raise ValueError(f"{name} must match the actuals' length")
        if self.history.shape[0] <= self.period:
            raise ValueError("history must be longer than the seasonal period")

    @property
    def horizon(self) -> int:
        return self.actuals.shape[0]


def seasonal_naive_scale(history: np.ndarray, period: int) -> float:
    """Mean absolute in-sample error of the lag-s naive forecast."""
    s = period if period > 1 else 1
    if history.size <= s:
        raise ZeroDenominator("history shorter than one seasonal lag")
    return float(np.mean(np.abs(history[s:] - history[:-s])))


def mase(record: EvalRecord) -> float:
    scale = seasonal_naive_scale(record.history, record.period)
    if scale == 0.0:
        raise ZeroDenominator(
            f"constant in-sample history for series {record.series_id!r}"
        )
    return float(np.mean(np.abs(record.actuals - record.point)) / scale)


def smape(record: EvalRecord) -> float:
    """Mean of 2|y - yhat| / (|y| + |yhat|); a 0/0 term counts as 0."""
    num = 2.0 * np.abs(record.actuals - record.point)
    den = np.abs(record.actuals) + np.abs(record.point)
    terms = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), 0.0)
    return float(np.mean(terms))


def msis(record: EvalRecord, alpha: float = 0.05) -> float:
    """Mean scaled interval score: width plus 2/alpha per bound violation."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must be in (0, 1)")
    scale = seasonal_naive_scale(record.history, record.period)
    if scale == 0.0:
        raise ZeroDenominator(
            f"constant in-sample history for series {record.series_id!r}"
        )
    y, lo, up = record.actuals, record.lower, record.upper
    width = up - lo
    below = (lo - y) * (y < lo)
    above = (y - up) * (y > up)
    score = width + (2.0 / alpha) * (below + above)
    return float(np.mean(score) / scale)


def accuracy(true_labels, predicted_labels) -> float:
    """Percentage of exact matches."""
    t = list(true_labels)
    p = list(predicted_labels)
    if len(t) != len(p) or not t:
        raise ValueError("label lists must be non-empty and equal length")
    return 100.0 * sum(a == b for a, b in zip(t, p)) / len(t)


def macro_f1(true_labels, predicted_labels, classes) -> float:
    """Equal-weight average of per-class F1 over the declared class set,
    as a percentage.  A class absent from both truth and prediction
    contributes F1 = 0; exclude it from `classes` to ignore it."""
    t = list(true_labels)
    p = list(predicted_labels)
    if len(t) != len(p) or not t:
        raise ValueError("label lists must be non-empty and equal length")
    if not classes:
        raise ValueError("classes must be non-empty")
    f1s = []
    for c in classes:
        tp = sum(1 for a, b in zip(t, p) if a == c and b == c)
        fp = sum(1 for a, b in zip(t, p) if a != c and b == c)
        fn = sum(1 for a, b in zip(t, p) if a == c and b != c)
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = (2 * precision * recall / (precision + recall)
              if precision + recall > 0 else 0.0)
        f1s.append(f1)
    return 100.0 * float(np.mean(f1s))


def dm_test(errors_a, errors_b, h: int = 1, loss: str = "squared"
            ) -> tuple[float, float, str]:
    """Equal-predictive-accuracy test on two forecast error sequences.

    Returns (statistic, two-sided p-value, direction), direction being which
    method is significantly more accurate at the 5% level ('a', 'b', or
    'none').  Negative statistics favor a (smaller loss).
    """
    a = np.asarray(errors_a, dtype=float)
    b = np.asarray(errors_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("error sequences must be 1-D and equal length")
    n = a.size
    if n <= h:
        raise ValueError("need more observations than the forecast horizon")
    if loss == "squared":
        d = a ** 2 - b ** 2
    elif loss == "absolute":
        d = np.abs(a) - np.abs(b)
    else:
        raise ValueError("loss must be 'squared' or 'absolute'")
    d_mean = d.mean()
    dc = d - d_mean
    gamma0 = float(np.dot(dc, dc)) / n
    v = gamma0
    for k in range(1, h):
        v += 2.0 * float(np.dot(dc[k:], dc[:-k])) / n
    if gamma0 <= 0.0:
        raise DegenerateDifferential("loss differential has zero variance")
    if v <= 0.0:
        raise DegenerateDifferential(
            "non-positive long-run variance estimate for the differential"
        )
    dm = d_mean / np.sqrt(v / n)
    adjustment = np.sqrt((n + 1 - 2 * h + h * (h - 1) / n) / n)
    dm *= adjustment
    p_value = 2.0 * float(stats.t.sf(abs(dm), df=n - 1))
    if p_value < 0.05:
        direction = "a" if dm < 0 else "b"
    else:
        direction = "none"
    return float(dm), p_value, direction


@dataclass(frozen=True)
class Embedding2D:
    """Per-series planar coordinates plus a tag naming their source."""

    points: np.ndarray = field(repr=False)
    source: str = ""

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", p)
        if p.ndim != 2 or p.shape[1] != 2 or p.shape[0] == 0:
            raise ValueError("points must be a non-empty (n, 2) array")
        if not np.all(np.isfinite(p)):
            raise ValueError("embedding coordinates must be finite")


def project_features_2d(X: np.ndarray, source: str = "") -> Embedding2D:
    """Trivial deterministic linear projection of a feature matrix to 2-D,
    for self-tests; real instance-space studies should supply their own
    embedding."""
    X = np.asarray(X, dtype=float)
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd == 0] = 1.0
    Z = (X - mu) / sd
    rng = np.random.default_rng(59)
    W = rng.normal(0.0, 1.0, (X.shape[1], 2))
    return Embedding2D(points=Z @ W, source=source)


def miscoverage(sim: Embedding2D, ref: Embedding2D, n_bins: int = 30) -> float:
    """Fraction of grid cells occupied by the reference point set but not by
    the simulated one, over the union bounding box cut into n_bins^2 cells
    (points on upper edges land in the last bin)."""
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    pts = np.vstack([sim.points, ref.points])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)

    def cells(points: np.ndarray) -> set[tuple[int, int]]:
        idx = np.floor((points - lo) / span * n_bins).astype(int)
        idx = np.clip(idx, 0, n_bins - 1)
        return set(map(tuple, idx))

    covered_sim = cells(sim.points)
    covered_ref = cells(ref.points)
    missed = len(covered_ref - covered_sim)
    return missed / float(n_bins * n_bins)


def summarize_metric(values: np.ndarray) -> dict[str, float]:
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return {"mean": float("nan"), "median": float("nan"), "count": 0}
    return {"mean": float(np.mean(v)), "median": float(np.median(v)),
            "count": int(v.size)}


def horizon_bands(h: int, n_bands: int = 3) -> list[tuple[int, int]]:
    """Split 1..h into contiguous bands (the paper-style 1-2/3-4/5-6 split),
    plus the caller usually appends the full 1..h band."""
    if h < 1:
        raise ValueError("h must be >= 1")
    n_bands = min(n_bands, h)
    edges = np.linspace(0, h, n_bands + 1).astype(int)
    return [(int(edges[i]) + 1, int(edges[i + 1])) for i in range(n_bands)]


def band_slice(record_values: np.ndarray, band: tuple[int, int]) -> np.ndarray:
    lo, hi = band
    return record_values[lo - 1: hi]
