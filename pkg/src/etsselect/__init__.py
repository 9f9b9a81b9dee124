"""etsselect: exponential smoothing forecasting with feature-based model
selection.

Instead of fitting every candidate model and comparing information criteria,
a trio of boosted-tree classifiers trained on simulated series predicts the
error/trend/seasonality component forms directly from 59 series features;
the predicted model is then checked, adjusted, fitted, and forecast.
"""

__version__ = "0.1.0"

from .ets import (
    EtsParams,
    EtsSpec,
    FittedEts,
    Forecast,
    TimeSeries,
    applicable_specs,
    fit,
    forecast,
    parse_spec,
    select_by_ic,
    simulate,
)

__all__ = [
    "EtsSpec", "EtsParams", "TimeSeries", "FittedEts", "Forecast",
    "applicable_specs", "parse_spec", "simulate", "fit", "forecast",
    "select_by_ic", "__version__",
]
