import numpy as np
import pytest

from etsselect import EtsParams, EtsSpec, applicable_specs, parse_spec
from etsselect.ets.specs import is_applicable

# The 15 usable triples and the 15 rejected ones
# ------------------------------------------------------------------------------
USABLE = [
    "ANN", "ANA", "MNN", "MNA", "MNM",
    "AAN", "AAA", "MAN", "MAA", "MAM",
    "AAdN", "AAdA", "MAdN", "MAdA", "MAdM",
]
UNSTABLE = ["ANM", "AAM", "AAdM", "MMA", "MMdA", "AMN", "AMA", "AMM",
            "AMdN", "AMdA", "AMdM"]
EXPLOSIVE = ["MMN", "MMdN", "MMM", "MMdM"]


def test_seasonal_registry_has_15():
    specs = applicable_specs(12)
    assert len(specs) == 15
    assert sorted(s.name for s in specs) == sorted(USABLE)


def test_nonseasonal_registry_has_6():
    specs = applicable_specs(1)
    assert len(specs) == 6
    assert all(s.seasonality == "N" for s in specs)


def test_quarterly_contains_mnm_not_anm():
    names = {s.name for s in applicable_specs(4)}
    assert "MNM" in names
    assert "ANM" not in names


@pytest.mark.parametrize("name", USABLE)
def test_usable_specs_construct(name):
    spec = parse_spec(name, period=12 if name[-1] != "N" else 1)
    assert spec.name == name


@pytest.mark.parametrize("name", UNSTABLE + EXPLOSIVE)
def test_rejected_specs_raise(name):
    with pytest.raises(ValueError):
        parse_spec(name, period=12)


def test_is_applicable_matches_registry():
    usable_triples = {(s.error, s.trend, s.seasonality) for s in applicable_specs(12)}
    for e in ("A", "M"):
        for t in ("N", "A", "Ad"):
            for s in ("N", "A", "M"):
                assert is_applicable(e, t, s) == ((e, t, s) in usable_triples)


def test_parse_print_round_trip():
    for period in (1, 4, 12):
        for spec in applicable_specs(period):
            assert parse_spec(spec.name, period) == spec


def test_period_one_rejects_seasonal():
    with pytest.raises(ValueError):
        EtsSpec("A", "N", "A", period=1)


def test_taxonomy_order_is_row_major():
    assert [s.name for s in applicable_specs(4)] == USABLE


# n_params accounting
# ------------------------------------------------------------------------------
@pytest.mark.parametrize("name,period,expected", [
    ("ANN", 1, 3),        # alpha, level0, variance
    ("AAN", 1, 5),        # + beta, trend0
    ("AAdN", 1, 6),       # + phi
    ("ANA", 4, 7),        # alpha, gamma, level0, 3 seasonal, variance
    ("MAM", 12, 17),      # alpha, beta, gamma, level0, trend0, 11 seasonal, var
    ("MAdM", 12, 18),
])
def test_n_params(name, period, expected):
    assert parse_spec(name, period).n_params() == expected


# Parameter invariants
# ------------------------------------------------------------------------------
def test_params_validation():
    spec = EtsSpec("A", "A", "N")
    EtsParams(alpha=0.5, level0=1.0, beta=0.1, trend0=0.0).validate(spec)
    with pytest.raises(ValueError):
        EtsParams(alpha=0.5, level0=1.0, beta=0.6, trend0=0.0).validate(spec)
    with pytest.raises(ValueError):
        EtsParams(alpha=1.2, level0=1.0, beta=0.1, trend0=0.0).validate(spec)
    with pytest.raises(ValueError):  # gamma for non-seasonal spec
        EtsParams(alpha=0.5, level0=1.0, beta=0.1, trend0=0.0,
                  gamma=0.1, seasonal0=np.zeros(4)).validate(spec)


def test_seasonal_state_normalization():
    spec = EtsSpec("M", "N", "M", 4)
    good = np.array([1.2, 0.8, 1.1, 0.9])
    EtsParams(alpha=0.3, level0=10.0, gamma=0.1, seasonal0=good).validate(spec)
    with pytest.raises(ValueError):  # does not average to 1
        EtsParams(alpha=0.3, level0=10.0, gamma=0.1,
                  seasonal0=good * 1.5).validate(spec)
    with pytest.raises(ValueError):  # non-positive factor
        EtsParams(alpha=0.3, level0=10.0, gamma=0.1,
                  seasonal0=np.array([2.0, 1.0, 1.2, -0.2])).validate(spec)


def test_phi_bounds_for_damped():
    spec = EtsSpec("A", "Ad", "N")
    EtsParams(alpha=0.5, level0=1.0, beta=0.1, trend0=0.0, phi=0.9).validate(spec)
    with pytest.raises(ValueError):
        EtsParams(alpha=0.5, level0=1.0, beta=0.1, trend0=0.0, phi=0.5).validate(spec)
