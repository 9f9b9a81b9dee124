"""Labeled-corpus simulation: sampling laws and the corpus builder.

Counts are split evenly across the frequency's model set (remainders go to
the earliest models in taxonomy order).  Parameter draws follow fixed laws
chosen to produce well-scaled positive series that multiplicative components
can handle; draws whose sample path collapses through zero are rejected and
redrawn from the same per-series stream, so the output is reproducible from
the single corpus seed.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from ..ets.simulate import simulate
from ..ets.specs import EtsParams, EtsSpec, TimeSeries, applicable_specs

FREQUENCY_NAMES = {1: "yearly", 4: "quarterly", 12: "monthly"}
LENGTH_RANGES = {1: (19, 100), 4: (24, 300), 12: (60, 600)}
PHI_RANGE = (0.80, 0.98)
MAX_DRAWS = 80


@dataclass(frozen=True)
class SimulationPlan:
    """Series counts per frequency plus the (fixed) samplers' bounds."""

    counts: dict[int, int] = field(
        default_factory=lambda: {1: 600, 4: 600, 12: 1200})
    length_ranges: dict[int, tuple[int, int]] = field(
        default_factory=lambda: dict(LENGTH_RANGES))

    def __post_init__(self):
        for period, count in self.counts.items():
            if period not in FREQUENCY_NAMES:
                raise ConfigError(f"unsupported frequency period {period}")
            if count < 0:
                raise ConfigError("counts must be non-negative")
        for period in self.counts:
            if period not in self.length_ranges:
                raise ConfigError(f"no length range for period {period}")
            lo, hi = self.length_ranges[period]
            if lo < 8 or lo < 3 * period or hi < lo:
                raise ConfigError(
                    f"length range for period {period} must allow feature "
                    "extraction (>= max(8, 3 * period))"
                )

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def per_model_counts(self, period: int) -> list[tuple[EtsSpec, int]]:
        specs = applicable_specs(period)
        count = self.counts.get(period, 0)
        base, rem = divmod(count, len(specs))
        return [(s, base + (1 if i < rem else 0)) for i, s in enumerate(specs)]


DESK_PLAN = SimulationPlan()


@dataclass(frozen=True)
class LabeledSeries:
    series: TimeSeries
    spec: EtsSpec


@dataclass(frozen=True)
class Corpus:
    items: tuple[LabeledSeries, ...]
    seed: int
    digest: str

    def __len__(self) -> int:
        return len(self.items)

    def series(self) -> list[TimeSeries]:
        return [it.series for it in self.items]

    def labels(self) -> list[EtsSpec]:
        return [it.spec for it in self.items]


def draw_params(spec: EtsSpec, rng: np.random.Generator) -> tuple[EtsParams, float]:
    """One parameter draw plus innovation sd for the given model form."""
    alpha = rng.uniform(0.05, 0.95)
    beta = trend0 = None
    gamma = None
    seasonal0 = None
    phi = 1.0
    level0 = rng.uniform(50.0, 5000.0)
    if spec.trend != "N":
        beta = rng.uniform(0.05, 0.95) * alpha
        trend0 = rng.uniform(-2.0, 2.0)
    if spec.damped:
        phi = rng.uniform(*PHI_RANGE)
    if spec.seasonality != "N":
        gamma = rng.uniform(0.05, 0.95) * (1.0 - alpha)
        amp = rng.uniform(0.1, 0.5)
        u = rng.uniform(-1.0, 1.0, spec.period)
        v = u - u.mean()
        peak = np.abs(v).max()
        v = v / peak if peak > 0 else np.zeros(spec.period)
        if spec.seasonality == "A":
            seasonal0 = amp * level0 * v
        else:
            seasonal0 = 1.0 + amp * v
    if spec.error == "A":
        noise_sd = rng.uniform(0.01, 0.10) * level0
    else:
        noise_sd = rng.uniform(0.01, 0.05)
    params = EtsParams(alpha=alpha, level0=level0, beta=beta, gamma=gamma,
                       phi=phi, trend0=trend0, seasonal0=seasonal0)
    return params, noise_sd


def _draw_series(spec: EtsSpec, length_range: tuple[int, int],
                 rng: np.random.Generator, series_id: str) -> TimeSeries:
    needs_positive = spec.error == "M" or spec.seasonality == "M"
    for _ in range(MAX_DRAWS):
        n = int(rng.integers(length_range[0], length_range[1] + 1))
        params, noise_sd = draw_params(spec, rng)
        sim_seed = int(rng.integers(0, 2 ** 63 - 1))
        try:
            ts = simulate(spec, params, n, noise_sd, sim_seed, series_id=series_id)
        except ValueError:
            continue  # mean path collapsed; redraw
        if needs_positive and ts.has_nonpositive:
            continue
        return ts
    raise RuntimeError(f"could not simulate a usable series for {spec.name}")


def build_corpus(plan: SimulationPlan, seed: int) -> Corpus:
    """Simulate the plan: every series labeled with its generating spec,
    reproducible bit-for-bit from the seed."""
    schedule = []
    for period in sorted(plan.counts):
        for spec, count in plan.per_model_counts(period):
            for j in range(count):
                schedule.append((period, spec, j))
    children = np.random.SeedSequence(seed).spawn(len(schedule))
    items = []
    for (period, spec, j), child in zip(schedule, children):
        rng = np.random.default_rng(child)
        name = f"{FREQUENCY_NAMES[period][0]}-{spec.name}-{j:05d}"
        ts = _draw_series(spec, plan.length_ranges[period], rng, name)
        items.append(LabeledSeries(series=ts, spec=spec))
    return Corpus(items=tuple(items), seed=seed, digest=corpus_digest(items))


def corpus_digest(items) -> str:
    h = hashlib.sha256()
    for it in items:
        h.update(it.series.id.encode())
        h.update(str(it.series.period).encode())
        h.update(it.spec.name.encode())
        h.update(np.ascontiguousarray(it.series.values).tobytes())
    return h.hexdigest()
