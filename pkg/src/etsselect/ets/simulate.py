"""Seeded sample-path generation for any spec."""

import numpy as np

from . import engine
from .fit import _codes
from .specs import EtsParams, EtsSpec, TimeSeries


def simulate(spec: EtsSpec, params: EtsParams, n: int, noise_sd: float,
             seed: int, series_id: str = "sim") -> TimeSeries:
    """Generate n observations from the state-space recursion of spec.

    Innovations are Gaussian with standard deviation noise_sd (absolute for
    additive errors, relative for multiplicative).  Identical arguments give
    bit-identical output.  Raises ValueError when a multiplicative component
    drives the mean non-positive; callers that sample random parameters
    should catch and redraw.
    """
    params.validate(spec)
    if n < 2 * spec.period:
        raise ValueError(f"n must be >= 2 * period, got {n}")
    if noise_sd <= 0.0:
        raise ValueError("noise_sd must be positive")

    rng = np.random.default_rng(seed)
    eps = rng.normal(0.0, noise_sd, size=n)
    error, trend, season = _codes(spec)
    seasonal0 = (params.seasonal0.astype(float) if params.seasonal0 is not None
                 else np.zeros(1))
    y, ok = engine._simulate(
        eps, spec.period, error, trend, season,
        params.alpha,
        params.beta if params.beta is not None else 0.0,
        params.gamma if params.gamma is not None else 0.0,
        params.phi, params.level0,
        params.trend0 if params.trend0 is not None else 0.0,
        seasonal0,
    )
    if not ok:
        raise ValueError(
            f"simulation of {spec.name} hit a non-positive mean; "
            "parameters are incompatible with multiplicative components"
        )
    return TimeSeries(id=series_id, period=spec.period, values=y)
