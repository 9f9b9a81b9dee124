"""Boosted training: softmax objective, per-class trees, bagging, binning."""

import numpy as np

from ..errors import DegenerateData
from .config import TrainConfig
from .ensemble import Tree, TreeEnsemble, softmax
from .grower import grow_tree, predict_binned


def quantile_bin_edges(col: np.ndarray, max_bin: int) -> np.ndarray:
    """Split points for one feature: every distinct value when they fit in
    the bin budget (making histogram splits exact), equal-frequency
    quantiles otherwise."""
    distinct = np.unique(col)
    if distinct.size <= 1:
        return np.empty(0)
    if distinct.size <= max_bin:
        return distinct[:-1].astype(float)
    qs = np.arange(1, max_bin) / max_bin
    return np.unique(np.quantile(col, qs))


def bin_matrix(X: np.ndarray, edges: list[np.ndarray]) -> np.ndarray:
    """Bin index per cell; values beyond the edges clamp to the end bins."""
    binned = np.empty(X.shape, dtype=np.uint8)
    for j, e in enumerate(edges):
        binned[:, j] = np.searchsorted(e, X[:, j], side="left").astype(np.uint8)
    return binned


def multiclass_grad_hess(scores: np.ndarray, y_idx: np.ndarray):
    probs = softmax(scores)
    grad = probs.copy()
    grad[np.arange(y_idx.size), y_idx] -= 1.0
    hess = probs * (1.0 - probs)
    return grad, hess, probs


def logloss(probs: np.ndarray, y_idx: np.ndarray) -> float:
    p = np.clip(probs[np.arange(y_idx.size), y_idx], 1e-15, 1.0)
    return float(-np.mean(np.log(p)))


def train(X: np.ndarray, y: list[str] | np.ndarray,
          config: TrainConfig = TrainConfig()) -> TreeEnsemble:
    """Fit the multiclass ensemble; deterministic given (X, y, config)."""
    X = np.ascontiguousarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise DegenerateData("X must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(X)):
        bad = int(np.nonzero(~np.isfinite(X).all(axis=1))[0][0])
        raise DegenerateData(f"non-finite feature values in row {bad}")
    y = np.asarray([str(v) for v in y])
    if y.shape[0] != X.shape[0]:
        raise DegenerateData("X and y must have the same number of rows")
    if X.shape[0] < config.min_data_in_leaf:
        raise DegenerateData(
            f"need at least min_data_in_leaf={config.min_data_in_leaf} rows"
        )

    class_labels = tuple(sorted(set(y.tolist())))
    n_classes = len(class_labels)
    label_to_idx = {c: i for i, c in enumerate(class_labels)}
    y_idx = np.array([label_to_idx[v] for v in y], dtype=np.int64)

    n, n_features = X.shape
    edges = [quantile_bin_edges(X[:, j], config.max_bin) for j in range(n_features)]
    n_bins = np.array([e.size + 1 for e in edges], dtype=np.int64)
    binned = bin_matrix(X, edges)

    gain_by_feature = np.zeros(n_features)
    trees: list[Tree] = []
    train_logloss: list[float] = []

    if n_classes == 1:
        return TreeEnsemble(
            n_classes=1, class_labels=class_labels, n_features=n_features,
            trees=(), bin_edges=tuple(edges), gain_by_feature=gain_by_feature,
            config=config, train_logloss=(),
        )

    rng = np.random.default_rng(config.seed)
    scores = np.zeros((n, n_classes))
    all_rows = np.arange(n, dtype=np.int64)
    bag_rows = all_rows
    use_bagging = config.bagging_fraction < 1.0 and config.bagging_freq > 0
    n_bag = max(int(round(config.bagging_fraction * n)), config.min_data_in_leaf)
    n_feat_sub = max(int(round(config.feature_fraction * n_features)), 1)

    for r in range(config.num_boost_round):
        grad, hess, probs = multiclass_grad_hess(scores, y_idx)
        train_logloss.append(logloss(probs, y_idx))
        if use_bagging and r % config.bagging_freq == 0:
            bag_rows = np.sort(rng.choice(n, size=min(n_bag, n), replace=False))
            bag_rows = bag_rows.astype(np.int64)
        for k in range(n_classes):
            if n_feat_sub < n_features:
                feats = np.sort(rng.choice(n_features, size=n_feat_sub,
                                           replace=False)).astype(np.int64)
            else:
                feats = np.arange(n_features, dtype=np.int64)
            feature, bin_thr, left, right, value, gain = grow_tree(
                binned, grad[:, k], hess[:, k], bag_rows, feats, n_bins,
                config.num_leaves, config.min_data_in_leaf,
                config.lambda_reg, config.min_split_gain, config.eta,
            )
            threshold = np.array(
                [edges[feature[i]][bin_thr[i]] if feature[i] >= 0 else 0.0
                 for i in range(feature.size)])
            for i in range(feature.size):
                if feature[i] >= 0:
                    gain_by_feature[feature[i]] += gain[i]
            trees.append(Tree(
                round_index=r, class_index=k, feature=feature, bin_thr=bin_thr,
                threshold=threshold, left=left, right=right, value=value,
                gain=gain,
            ))
            predict_binned(binned, feature, bin_thr, left, right, value,
                           scores[:, k])

    return TreeEnsemble(
        n_classes=n_classes, class_labels=class_labels, n_features=n_features,
        trees=tuple(trees), bin_edges=tuple(edges),
        gain_by_feature=gain_by_feature, config=config,
        train_logloss=tuple(train_logloss),
    )
