"""Exponential smoothing state-space models: taxonomy, simulation,
estimation, forecasting, and the information-criteria baseline."""

from .fit import FittedEts, fit, heuristic_params
from .forecast import Forecast, forecast
from .ic import select_by_ic
from .simulate import simulate
from .specs import EtsParams, EtsSpec, TimeSeries, applicable_specs, parse_spec

__all__ = [
    "EtsSpec", "EtsParams", "TimeSeries", "FittedEts", "Forecast",
    "applicable_specs", "parse_spec", "simulate", "fit", "heuristic_params",
    "forecast", "select_by_ic",
]
