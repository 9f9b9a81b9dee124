"""Model taxonomy: component-form triples, parameter containers, series type.

The family is indexed by (error, trend, seasonality) component forms.  Out of
the 30 combinatorial forms only 15 are numerically usable: multiplicative
seasonality with additive errors gives unstable forecast variances, and
multiplicative trends explode at long horizons.  Both groups are rejected at
construction time.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

ERRORS = ("A", "M")
TRENDS = ("N", "A", "Ad")
SEASONS = ("N", "A", "M")

# Integer codes shared with the numba kernels.
ERROR_CODE = {"A": 1, "M": 2}
TREND_CODE = {"N": 0, "A": 1, "Ad": 1}  # damping handled via phi
SEASON_CODE = {"N": 0, "A": 1, "M": 2}

# Usable triples in row-major taxonomy order (trend rows N, A, Ad; within a
# row the additive-error block precedes the multiplicative-error block).
_APPLICABLE_TRIPLES = (
    ("A", "N", "N"), ("A", "N", "A"),
    ("M", "N", "N"), ("M", "N", "A"), ("M", "N", "M"),
    ("A", "A", "N"), ("A", "A", "A"),
    ("M", "A", "N"), ("M", "A", "A"), ("M", "A", "M"),
    ("A", "Ad", "N"), ("A", "Ad", "A"),
    ("M", "Ad", "N"), ("M", "Ad", "A"), ("M", "Ad", "M"),
)
_APPLICABLE_SET = frozenset(_APPLICABLE_TRIPLES)
_TAXONOMY_INDEX = {t: i for i, t in enumerate(_APPLICABLE_TRIPLES)}

PHI_MIN = 0.8
PHI_MAX = 0.98


def is_applicable(error: str, trend: str, seasonality: str) -> bool:
    return (error, trend, seasonality) in _APPLICABLE_SET


@dataclass(frozen=True)
class EtsSpec:
    """One usable (error, trend, seasonality) triple plus its seasonal period."""

    error: str
    trend: str
    seasonality: str
    period: int = 1

    def __post_init__(self):
        if self.error not in ERRORS:
            raise ValueError(f"unknown error form {self.error!r}")
        if self.trend not in TRENDS:
            raise ValueError(f"unknown trend form {self.trend!r}")
        if self.seasonality not in SEASONS:
            raise ValueError(f"unknown seasonality form {self.seasonality!r}")
        if not is_applicable(self.error, self.trend, self.seasonality):
            raise ValueError(
                f"model {self.error}{self.trend}{self.seasonality} is not usable "
                "(unstable forecast variance or multiplicative trend)"
            )
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.seasonality != "N" and self.period < 2:
            raise ValueError("seasonal model requires period >= 2")

    @property
    def damped(self) -> bool:
        return self.trend == "Ad"

    @property
    def name(self) -> str:
        """Compact string form, e.g. 'ANN' or 'MAdM'."""
        return f"{self.error}{self.trend}{self.seasonality}"

    @property
    def taxonomy_index(self) -> int:
        return _TAXONOMY_INDEX[(self.error, self.trend, self.seasonality)]

    def n_params(self) -> int:
        """Count of estimated quantities: smoothing weights, initial states,
        and the innovation variance."""
        k = 1 + 1 + 1  # alpha, level0, variance
        if self.trend != "N":
            k += 2  # beta, trend0
        if self.damped:
            k += 1  # phi
        if self.seasonality != "N":
            k += 1 + (self.period - 1)  # gamma, free seasonal states
        return k

    def __str__(self) -> str:
        return self.name


def parse_spec(name: str, period: int = 1) -> EtsSpec:
    """Parse a compact string form ('ANN', 'MAdM', ...) back into a spec."""
    if len(name) < 3:
        raise ValueError(f"cannot parse model name {name!r}")
    error = name[0]
    if len(name) == 4 and name[1:3] == "Ad":
        trend, seasonality = "Ad", name[3]
    elif len(name) == 3:
        trend, seasonality = name[1], name[2]
    else:
        raise ValueError(f"cannot parse model name {name!r}")
    return EtsSpec(error, trend, seasonality, period)


def applicable_specs(period: int) -> list[EtsSpec]:
    """All usable specs at the given period: 15 when seasonal, 6 otherwise."""
    if period < 1:
        raise ValueError("period must be >= 1")
    specs = []
    for e, t, s in _APPLICABLE_TRIPLES:
        if period == 1 and s != "N":
            continue
        specs.append(EtsSpec(e, t, s, period))
    return specs


@dataclass(frozen=True)
class EtsParams:
    """Smoothing weights, damping, and initial states for one spec.

    Seasonal initial states are series-unit offsets (additive seasonality,
    summing to 0) or dimensionless factors (multiplicative, averaging to 1).
    """

    alpha: float
    level0: float
    beta: Optional[float] = None
    gamma: Optional[float] = None
    phi: float = 1.0
    trend0: Optional[float] = None
    seasonal0: Optional[np.ndarray] = None

    def validate(self, spec: EtsSpec) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if spec.trend == "N":
            if self.beta is not None or self.trend0 is not None:
                raise ValueError("beta/trend0 supplied for a trendless model")
        else:
            if self.beta is None or self.trend0 is None:
                raise ValueError("trended model requires beta and trend0")
            if not (0.0 < self.beta < self.alpha):
                raise ValueError(f"beta must be in (0, alpha), got {self.beta}")
        if spec.damped:
            if not (PHI_MIN <= self.phi <= PHI_MAX):
                raise ValueError(f"phi must be in [{PHI_MIN}, {PHI_MAX}], got {self.phi}")
        elif self.phi != 1.0:
            raise ValueError("phi must be 1 for an undamped model")
        if spec.seasonality == "N":
            if self.gamma is not None or self.seasonal0 is not None:
                raise ValueError("gamma/seasonal0 supplied for a non-seasonal model")
        else:
            if self.gamma is None or self.seasonal0 is None:
                raise ValueError("seasonal model requires gamma and seasonal0")
            if not (0.0 < self.gamma < 1.0 - self.alpha):
                raise ValueError(f"gamma must be in (0, 1 - alpha), got {self.gamma}")
            s = np.asarray(self.seasonal0, dtype=float)
            if s.shape != (spec.period,):
                raise ValueError("seasonal0 must hold one state per period position")
            if spec.seasonality == "M":
                if np.any(s <= 0.0):
                    raise ValueError("multiplicative seasonal states must be positive")
                if abs(s.mean() - 1.0) > 1e-6:
                    raise ValueError("multiplicative seasonal states must average to 1")
            else:
                if abs(s.sum()) > 1e-6 * max(1.0, np.abs(s).max()):
                    raise ValueError("additive seasonal states must sum to 0")


@dataclass(frozen=True)
class TimeSeries:
    """A univariate series with an id and a declared seasonal period."""

    id: str
    period: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if v.ndim != 1 or v.size < 1:
            raise ValueError("values must be a non-empty 1-D array")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"series {self.id!r} contains non-finite values")

    def __len__(self) -> int:
        return self.values.size

    @property
    def has_nonpositive(self) -> bool:
        return bool(np.any(self.values <= 0.0))
