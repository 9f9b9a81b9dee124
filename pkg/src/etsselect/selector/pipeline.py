"""Online phase: features -> component prediction -> checks -> fit -> forecast."""

from dataclasses import dataclass

from ..errors import TooShort
from ..ets.fit import FittedEts, fit
from ..ets.forecast import DEFAULT_N_PATHS, Forecast, forecast
from ..ets.specs import EtsSpec, TimeSeries
from ..features import extract
from .checks import AdjustmentLog, check_and_adjust
from .model import SelectorModel


@dataclass(frozen=True)
class SelectionResult:
    spec: EtsSpec
    forecast: Forecast
    log: AdjustmentLog
    fitted: FittedEts


def select_and_forecast(model: SelectorModel, series: TimeSeries, h: int,
                        confidence: float = 0.95, seed: int = 0,
                        n_paths: int = DEFAULT_N_PATHS) -> SelectionResult:
    """One series end to end.  Never raises for a series that passes feature
    extraction: a selected model the series is too short to estimate falls
    back to its trendless sibling (logged), and a degraded fit still
    forecasts (logged)."""
    fv = extract(series)
    pred = model.predict_components(fv)
    spec, log = check_and_adjust(pred, series.period, series.has_nonpositive,
                                 len(series))
    fitted = _fit_with_fallback(series, spec, log)
    log.final = fitted.spec.name
    if fitted.degraded:
        log.record(0, fitted.spec.name, fitted.spec.name,
                   "optimizer could not improve the heuristic start")
    fc = forecast(fitted, h, confidence, n_paths, seed)
    return SelectionResult(spec=fitted.spec, forecast=fc, log=log, fitted=fitted)


def _fit_with_fallback(series: TimeSeries, spec: EtsSpec,
                       log: AdjustmentLog) -> FittedEts:
    try:
        return fit(series, spec)
    except TooShort:
        # drop the trend: the trendless sibling needs only 3 + 4 observations
        simpler = EtsSpec(spec.error, "N", spec.seasonality, spec.period)
        log.record(0, spec.name, simpler.name,
                   "series too short to estimate the selected model")
        return fit(series, simpler)
