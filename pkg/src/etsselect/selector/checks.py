"""Post-prediction model check and adjustment.

The predicted component forms may combine into an unusable model, clash with
non-positive data, or ask for a damped trend that the series is too short to
estimate.  Four ordered checks repair such predictions; the procedure is
total and always lands on a usable, feasible model.
"""

from dataclasses import dataclass, field

import numpy as np

from ..ets.specs import EtsSpec, is_applicable

ERROR_FORMS = ("A", "M")
TREND_FORMS = ("A", "Ad", "N")
SEASON_FORMS = ("A", "M", "N")

# tie order for "second-ranked trend": N outranks A outranks Ad on equal prob
_TREND_TIE_RANK = {"N": 0, "A": 1, "Ad": 2}


@dataclass(frozen=True)
class ComponentPrediction:
    """Per-form probabilities from the three classifiers (each sums to 1)."""

    p_error: dict[str, float]
    p_trend: dict[str, float]
    p_season: dict[str, float]

    def __post_init__(self):
        for probs, forms in ((self.p_error, ERROR_FORMS),
                             (self.p_trend, TREND_FORMS),
                             (self.p_season, SEASON_FORMS)):
            if set(probs) != set(forms):
                raise ValueError(f"expected probabilities over {forms}")
            total = sum(probs.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"probabilities sum to {total}, not 1")
            if any(p < 0 for p in probs.values()):
                raise ValueError("negative probability")


@dataclass
class AdjustmentLog:
    """What the check procedure did: initial argmax triple, applied checks
    with before/after forms, and the final model."""

    initial: str
    final: str = ""
    steps: list[dict] = field(default_factory=list)

    def record(self, check: int, before: str, after: str, note: str = "") -> None:
        self.steps.append({"check": check, "before": before, "after": after,
                           "note": note})

    def to_dict(self) -> dict:
        return {"initial": self.initial, "final": self.final, "steps": self.steps}


def _argmax(probs: dict[str, float], forms: tuple[str, ...]) -> str:
    best = forms[0]
    for f in forms[1:]:
        if probs[f] > probs[best]:
            best = f
    return best


def check_and_adjust(pred: ComponentPrediction, period: int,
                     has_nonpositive: bool, length: int
                     ) -> tuple[EtsSpec, AdjustmentLog]:
    """Turn raw component predictions into a usable, feasible model.

    Checks run in fixed order: 1) non-seasonal data forces seasonality N;
    2) an unusable triple keeps its trend and takes the usable
    (error, seasonality) pair with the largest probability product;
    3) multiplicative error on non-positive data becomes additive, repairing
    seasonality by probability if that broke usability; 4) a damped trend on
    a too-short series is replaced by the second-ranked trend form.
    """
    e = _argmax(pred.p_error, ERROR_FORMS)
    t = _argmax(pred.p_trend, TREND_FORMS)
    s = _argmax(pred.p_season, SEASON_FORMS)
    log = AdjustmentLog(initial=f"{e}{t}{s}")

    # Check 1: non-seasonal data cannot take a seasonal model
    if period == 1 and s != "N":
        log.record(1, f"{e}{t}{s}", f"{e}{t}N", "non-seasonal data")
        s = "N"

    # Check 2: unusable triple -> best usable (error, seasonality) at fixed trend
    if not is_applicable(e, t, s):
        e, s = _best_error_season(pred, e, t, s, period, log, check=2)

    # Check 3: multiplicative error needs strictly positive data
    if has_nonpositive and e == "M":
        before = f"{e}{t}{s}"
        e = "A"
        log.record(3, before, f"{e}{t}{s}", "non-positive values")
        if not is_applicable(e, t, s):
            best_s = None
            for cand in SEASON_FORMS:
                if period == 1 and cand != "N":
                    continue
                if not is_applicable(e, t, cand):
                    continue
                if best_s is None or pred.p_season[cand] > pred.p_season[best_s]:
                    best_s = cand
            log.record(3, f"{e}{t}{s}", f"{e}{t}{best_s}",
                       "seasonality repaired after error change")
            s = best_s

    # Check 4: damped trend requires length > n_params + 4
    if t == "Ad":
        k = EtsSpec(e, t, s, period).n_params()
        if length <= k + 4:
            ranked = sorted(TREND_FORMS,
                            key=lambda f: (-pred.p_trend[f], _TREND_TIE_RANK[f]))
            second = ranked[1]
            log.record(4, f"{e}{t}{s}", f"{e}{second}{s}",
                       f"length {length} <= {k} params + 4")
            t = second
            if not is_applicable(e, t, s):
                e, s = _best_error_season(pred, e, t, s, period, log, check=4)

    spec = EtsSpec(e, t, s, period)
    log.final = spec.name
    return spec, log


def _best_error_season(pred: ComponentPrediction, e: str, t: str, s: str,
                       period: int, log: AdjustmentLog, check: int
                       ) -> tuple[str, str]:
    """The usable (error, seasonality) pair with the largest probability
    product at fixed trend (ties keep enumeration order A before M/N)."""
    p_t = pred.p_trend[t]
    best = None
    best_p = -np.inf
    for e2 in ERROR_FORMS:
        for s2 in SEASON_FORMS:
            if period == 1 and s2 != "N":
                continue
            if not is_applicable(e2, t, s2):
                continue
            p = pred.p_error[e2] * p_t * pred.p_season[s2]
            if p > best_p:
                best, best_p = (e2, s2), p
    e2, s2 = best
    log.record(check, f"{e}{t}{s}", f"{e2}{t}{s2}",
               "largest-probability usable alternative")
    return e2, s2
