"""Trained ensemble container and prediction."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionMismatch
from .config import TrainConfig
from .grower import predict_raw


@dataclass(frozen=True)
class Tree:
    round_index: int
    class_index: int
    feature: np.ndarray = field(repr=False)   # int32, -1 at leaves
    bin_thr: np.ndarray = field(repr=False)   # int32 bin index threshold
    threshold: np.ndarray = field(repr=False)  # float64 raw-value threshold
    left: np.ndarray = field(repr=False)
    right: np.ndarray = field(repr=False)
    value: np.ndarray = field(repr=False)
    gain: np.ndarray = field(repr=False)

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature == -1))


def softmax(scores: np.ndarray) -> np.ndarray:
    z = scores - scores.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


@dataclass(frozen=True)
class TreeEnsemble:
    """Boosted multiclass model: per-class trees per round plus the binning
    and gain bookkeeping produced during training."""

    n_classes: int
    class_labels: tuple[str, ...]
    n_features: int
    trees: tuple[Tree, ...]
    bin_edges: tuple[np.ndarray, ...]
    gain_by_feature: np.ndarray = field(repr=False)
    config: TrainConfig = TrainConfig()
    train_logloss: tuple[float, ...] = ()

    def raw_scores(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_features,):
            raise DimensionMismatch(
                f"expected {self.n_features} features, got {x.shape}"
            )
        scores = np.zeros(self.n_classes)
        for tree in self.trees:
            scores[tree.class_index] += predict_raw(
                x, tree.feature, tree.threshold, tree.left, tree.right, tree.value
            )
        return scores

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        return softmax(self.raw_scores(x))

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.empty((X.shape[0], self.n_classes))
        for i in range(X.shape[0]):
            out[i] = self.predict_proba(X[i])
        return out

    def predict_label(self, x: np.ndarray) -> str:
        return self.class_labels[int(np.argmax(self.predict_proba(x)))]

    def feature_gain(self, names: list[str] | None = None) -> list[tuple[str, float]]:
        """Total split gain per feature, descending; ties keep feature order."""
        if names is None:
            names = [f"f{i}" for i in range(self.n_features)]
        if len(names) != self.n_features:
            raise DimensionMismatch("names length must match feature count")
        order = sorted(range(self.n_features),
                       key=lambda i: (-self.gain_by_feature[i], i))
        return [(names[i], float(self.gain_by_feature[i])) for i in order]

    def debug_dump(self) -> dict:
        """Human-inspectable structure summary (not a loadable format)."""
        return {
            "n_classes": self.n_classes,
            "class_labels": list(self.class_labels),
            "n_features": self.n_features,
            "n_trees": len(self.trees),
            "total_gain": float(self.gain_by_feature.sum()),
            "trees": [
                {
                    "round": t.round_index,
                    "class": t.class_index,
                    "n_nodes": int(t.feature.size),
                    "n_leaves": t.n_leaves,
                }
                for t in self.trees
            ],
        }
