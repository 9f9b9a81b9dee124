"""Point and interval forecasting from a fitted model."""

from dataclasses import dataclass, field

import numpy as np

from . import engine
from .fit import FittedEts, _codes

DEFAULT_N_PATHS = 5000


@dataclass(frozen=True)
class Forecast:
    """Point path and per-horizon empirical interval bounds."""

    point: np.ndarray = field(repr=False)
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    alpha_level: float
    horizon: int

    def __post_init__(self):
        for arr in (self.point, self.lower, self.upper):
            if arr.shape != (self.horizon,):
                raise ValueError("forecast arrays must all have length h")
        if not (0.0 < self.alpha_level < 1.0):
            raise ValueError("alpha_level must be in (0, 1)")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")


def forecast(model: FittedEts, h: int, confidence: float = 0.95,
             n_paths: int = DEFAULT_N_PATHS, seed: int = 0) -> Forecast:
    """Conditional-mean point path plus Monte Carlo interval bounds.

    Intervals are per-horizon empirical quantiles over n_paths sample paths
    simulated from the post-sample state with innovation sd equal to the
    fitted residual sd; one mechanism covers every model class.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    if not (0.0 < confidence < 1.0):
        raise ValueError("confidence must be in (0, 1)")
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")

    spec = model.spec
    error, trend, season = _codes(spec)
    m = spec.period
    slot0 = model.n_obs % m
    seasonal = model.final_seasonal.astype(float)
    if seasonal.size < m:
        seasonal = np.zeros(max(m, 1))

    point = engine._mean_path(h, m, error, trend, season, model.params.phi,
                              model.final_level, model.final_trend,
                              seasonal, slot0)

    rng = np.random.default_rng(seed)
    eps = rng.normal(0.0, model.sigma, size=(n_paths, h))
    paths = engine._sample_paths(
        eps, m, error, trend, season,
        model.params.alpha,
        model.params.beta if model.params.beta is not None else 0.0,
        model.params.gamma if model.params.gamma is not None else 0.0,
        model.params.phi, model.final_level, model.final_trend,
        seasonal, slot0,
    )
    tail = (1.0 - confidence) / 2.0
    lower = np.quantile(paths, tail, axis=0)
    upper = np.quantile(paths, 1.0 - tail, axis=0)
    return Forecast(point=point, lower=lower, upper=upper,
                    alpha_level=1.0 - confidence, horizon=h)
