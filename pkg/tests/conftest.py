import numpy as np
import pytest

from etsselect import EtsParams, EtsSpec, TimeSeries, simulate


def make_series(values, period=1, id="t"):
    return TimeSeries(id=id, period=period, values=np.asarray(values, dtype=float))


@pytest.fixture(scope="session")
def ann_series():
    """Long series from a known level-only model, for recovery checks."""
    return simulate(EtsSpec("A", "N", "N"), EtsParams(alpha=0.7, level0=100.0),
                    n=3000, noise_sd=5.0, seed=101)


@pytest.fixture(scope="session")
def monthly_mam_series():
    s0 = np.array([1.2, 0.8, 1.1, 0.9, 1.3, 0.7, 1.0, 1.05, 0.95, 1.1, 0.9, 1.0])
    s0 = s0 / s0.mean()
    params = EtsParams(alpha=0.3, level0=500.0, beta=0.02, trend0=1.0,
                       gamma=0.05, seasonal0=s0)
    return simulate(EtsSpec("M", "A", "M", 12), params, n=240, noise_sd=0.03, seed=11)
