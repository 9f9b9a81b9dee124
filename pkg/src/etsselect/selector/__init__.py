"""Feature-based model selection: corpus simulation, classifier training,
check-and-adjust, and the online selection pipeline."""

from .checks import AdjustmentLog, ComponentPrediction, check_and_adjust
from .model import SelectorModel, load_selector, save_selector, train_selector
from .pipeline import SelectionResult, select_and_forecast
from .plan import (
    DESK_PLAN,
    Corpus,
    LabeledSeries,
    SimulationPlan,
    build_corpus,
    corpus_digest,
    draw_params,
)

__all__ = [
    "SimulationPlan", "DESK_PLAN", "Corpus", "LabeledSeries", "build_corpus",
    "corpus_digest", "draw_params", "ComponentPrediction", "AdjustmentLog",
    "check_and_adjust", "SelectorModel", "train_selector", "save_selector",
    "load_selector", "SelectionResult", "select_and_forecast",
]
