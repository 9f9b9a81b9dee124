"""Feature extraction driver: one series in, one complete 59-vector out."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import SeriesTooShort
from ..ets.specs import TimeSeries
from .acf import acf_features
from .catch22 import catch22_features
from .decomposition import stl_features
from .manifest import FEATURE_NAMES, MANIFEST_VERSION
from .stationarity import stationarity_features

MIN_LENGTH = 8


@dataclass(frozen=True)
class FeatureVector:
    """The 59 features of one series, in manifest order, all finite.

    `sanitized` lists the features whose raw computation was non-finite and
    was replaced by 0 (zero-variance divisions, failed auxiliary fits).
    """

    values: np.ndarray = field(repr=False)
    sanitized: tuple[str, ...] = ()
    manifest_version: str = MANIFEST_VERSION

    names = FEATURE_NAMES

    def __post_init__(self):
        if self.values.shape != (len(FEATURE_NAMES),):
            raise ValueError("feature vector must have exactly 59 entries")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("feature vector contains non-finite values")

    def __getitem__(self, name: str) -> float:
        return float(self.values[FEATURE_NAMES.index(name)])

    def as_dict(self) -> dict[str, float]:
        return {n: float(v) for n, v in zip(FEATURE_NAMES, self.values)}


def extract(series: TimeSeries) -> FeatureVector:
    """Compute all 59 features; pure and deterministic.

    Non-finite intermediate results are sanitized to 0, matching the
    convention that seasonal features are 0 for non-seasonal series.
    """
    y = series.values
    n = y.size
    period = series.period
    if n < MIN_LENGTH or n < 3 * period:
        raise SeriesTooShort(
            f"series {series.id!r} has {n} observations; extraction needs "
            f">= max({MIN_LENGTH}, 3 * period = {3 * period})"
        )

    feats: dict[str, float] = {}
    feats.update(acf_features(y, period))
    feats.update(stationarity_features(y, period))
    feats.update(stl_features(y, period))
    feats["nperiods"] = 1.0 if period > 1 else 0.0
    feats["seasonal_period"] = float(period)
    feats["series_length"] = float(n)
    feats.update(catch22_features(y))

    values = np.empty(len(FEATURE_NAMES))
    sanitized = []
    for i, name in enumerate(FEATURE_NAMES):
        v = feats[name]
        if not np.isfinite(v):
            values[i] = 0.0
            sanitized.append(name)
        else:
            values[i] = float(v)
    return FeatureVector(values=values, sanitized=tuple(sanitized))


def extract_matrix(series_list: list[TimeSeries]) -> tuple[np.ndarray, list[str], int]:
    """Feature rows for a batch; returns (matrix, ids, sanitized_count)."""
    rows = np.empty((len(series_list), len(FEATURE_NAMES)))
    ids = []
    n_sanitized = 0
    for i, s in enumerate(series_list):
        fv = extract(s)
        rows[i] = fv.values
        ids.append(s.id)
        n_sanitized += len(fv.sanitized)
    return rows, ids, n_sanitized
