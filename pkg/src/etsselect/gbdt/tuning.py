"""Optional hyperparameter grid search with cross-validated one-vs-rest AUC."""

from dataclasses import replace
from itertools import product

import numpy as np

from .config import TrainConfig
from .training import train


def roc_auc(scores: np.ndarray, positives: np.ndarray) -> float:
    """Rank-statistic AUC with midrank tie handling."""
    n_pos = int(positives.sum())
    n_neg = positives.size - n_pos
    if n_pos == 0 or n_neg == 0:
        return np.nan
    order = np.argsort(scores, kind="stable")
    sorted_scores = scores[order]
    ranks = np.empty(positives.size)
    i = 0
    while i < sorted_scores.size:
        j = i
        while j + 1 < sorted_scores.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[i: j + 1] = (i + j) / 2.0 + 1.0
        i = j + 1
    pos_rank_sum = float(ranks[positives[order]].sum())
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def macro_ovr_auc(proba: np.ndarray, y_idx: np.ndarray, n_classes: int) -> float:
    aucs = []
    for k in range(n_classes):
        auc = roc_auc(proba[:, k], y_idx == k)
        if np.isfinite(auc):
            aucs.append(auc)
    return float(np.mean(aucs)) if aucs else np.nan


def _cv_folds(n: int, k: int, seed: int):
    rng = np.random.default_rng(seed)
    idx = rng.permutation(n)
    return [idx[i::k] for i in range(k)]


def grid_search(X: np.ndarray, y, base: TrainConfig,
                grid: dict[str, list], folds: int = 5,
                seed: int = 0) -> tuple[TrainConfig, list[dict]]:
    """Evaluate every grid point by k-fold macro one-vs-rest AUC; returns the
    best config (ties keep the earlier grid point) and the full result table."""
    y = np.asarray([str(v) for v in y])
    labels = sorted(set(y.tolist()))
    label_to_idx = {c: i for i, c in enumerate(labels)}
    y_idx = np.array([label_to_idx[v] for v in y])
    fold_idx = _cv_folds(len(y), folds, seed)

    results = []
    best = (-np.inf, None)
    keys = list(grid.keys())
    for combo in product(*(grid[k] for k in keys)):
        config = replace(base, **dict(zip(keys, combo)))
        scores = []
        for f in range(folds):
            test_rows = fold_idx[f]
            train_rows = np.concatenate([fold_idx[g] for g in range(folds) if g != f])
            model = train(X[train_rows], y[train_rows], config)
            proba = model.predict_proba_matrix(X[test_rows])
            full = np.zeros((test_rows.size, len(labels)))
            for j, lab in enumerate(model.class_labels):
                full[:, label_to_idx[lab]] = proba[:, j]
            auc = macro_ovr_auc(full, y_idx[test_rows], len(labels))
            if np.isfinite(auc):
                scores.append(auc)
        mean_auc = float(np.mean(scores)) if scores else -np.inf
        results.append({**dict(zip(keys, combo)), "auc": mean_auc})
        if mean_auc > best[0]:
            best = (mean_auc, config)
    return best[1], results
