"""Exhaustive-fit baseline: pick the candidate with the smallest criterion."""

import numpy as np

from ..errors import NoFeasibleModel, NonPositiveData, TooShort
from .fit import FittedEts, fit
from .specs import EtsSpec, TimeSeries, applicable_specs

CRITERIA = ("AIC", "AICc", "BIC")


def _criterion_value(fitted: FittedEts, criterion: str) -> float:
    return {"AIC": fitted.aic, "AICc": fitted.aicc, "BIC": fitted.bic}[criterion]


def select_by_ic(series: TimeSeries, criterion: str = "AICc") -> FittedEts:
    """Fit every feasible candidate and return the minimal-criterion fit.

    Candidates with multiplicative components are skipped on non-positive
    data, as are candidates the series is too short to estimate.  Ties break
    toward fewer parameters, then taxonomy order, so repeated runs agree.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    candidates = []
    for spec in applicable_specs(series.period):
        try:
            fitted = fit(series, spec)
        except (TooShort, NonPositiveData):
            continue
        value = _criterion_value(fitted, criterion)
        if not np.isfinite(value):
            continue
        candidates.append((value, fitted.n_params, spec.taxonomy_index, fitted))
    if not candidates:
        raise NoFeasibleModel(
            f"no candidate model is feasible for series {series.id!r}"
        )
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    return candidates[0][3]
