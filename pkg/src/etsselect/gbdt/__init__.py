"""Histogram-based gradient-boosted trees for multiclass classification."""

from .config import (
    ERROR_CLASSIFIER,
    SEASONALITY_CLASSIFIER,
    TREND_CLASSIFIER,
    TrainConfig,
)
from .ensemble import Tree, TreeEnsemble, softmax
from .serialize import load, save
from .training import train
from .tuning import grid_search, macro_ovr_auc, roc_auc

__all__ = [
    "TrainConfig", "Tree", "TreeEnsemble", "train", "save", "load",
    "softmax", "grid_search", "roc_auc", "macro_ovr_auc",
    "ERROR_CLASSIFIER", "TREND_CLASSIFIER", "SEASONALITY_CLASSIFIER",
]
