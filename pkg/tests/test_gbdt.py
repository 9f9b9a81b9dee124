import numpy as np
import pytest

from etsselect.errors import CorruptArtifact, DegenerateData, DimensionMismatch, VersionMismatch
from etsselect.gbdt import TrainConfig, Tree, TreeEnsemble, load, save, softmax, train
from etsselect.gbdt.tuning import grid_search, roc_auc


def two_cluster_data(n=1000, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(0, 1, (n, 10))
    y = np.where(X[:, 3] > 0.2, "pos", "neg")
    return X, y


# Exhaustive-split oracle: greedy leaf-wise growth on raw values, mirroring
# the documented tie rules (feature asc, threshold asc, earliest leaf first).
# ------------------------------------------------------------------------------
def exact_tree_oracle(X, grad, hess, num_leaves, min_data, lam, eta):
    n = X.shape[0]

    class Node:
        def __init__(self, rows):
            self.rows = rows
            self.feature = -1
            self.threshold = 0.0
            self.left = -1
            self.right = -1
            self.value = 0.0
            self.gain = 0.0
            self.best = None

    def seq_sum(vals, rows):
        acc = 0.0
        for r in rows:
            acc += vals[r]
        return acc

    def best_split(rows):
        g_total = seq_sum(grad, rows)
        h_total = seq_sum(hess, rows)
        parent = g_total * g_total / (h_total + lam)
        best = None
        for f in range(X.shape[1]):
            distinct = np.unique(X[rows, f])
            if distinct.size < 2:
                continue
            bucket_g = {}
            bucket_h = {}
            bucket_c = {}
            for r in rows:
                b = int(np.searchsorted(distinct, X[r, f]))
                bucket_g[b] = bucket_g.get(b, 0.0) + grad[r]
                bucket_h[b] = bucket_h.get(b, 0.0) + hess[r]
                bucket_c[b] = bucket_c.get(b, 0) + 1
            gl = hl = 0.0
            cl = 0
            for b in range(distinct.size - 1):
                gl += bucket_g.get(b, 0.0)
                hl += bucket_h.get(b, 0.0)
                cl += bucket_c.get(b, 0)
                if cl < min_data or len(rows) - cl < min_data:
                    continue
                gr = g_total - gl
                hr = h_total - hl
                gain = gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent
                if best is None or gain > best[0]:
                    best = (gain, f, float(distinct[b]))
        if best is not None and best[0] <= 0.0:
            best = None
        return best

    nodes = [Node(list(range(n)))]
    nodes[0].best = best_split(nodes[0].rows)
    n_leaves = 1
    while n_leaves < num_leaves:
        candidates = [(i, nd) for i, nd in enumerate(nodes)
                      if nd.feature == -1 and nd.best is not None]
        if not candidates:
            break
        node_i, node = max(candidates, key=lambda c: (c[1].best[0], -c[0]))
        gain, f, thr = node.best
        left_rows = [r for r in node.rows if X[r, f] <= thr]
        right_rows = [r for r in node.rows if X[r, f] > thr]
        node.feature, node.threshold, node.gain = f, thr, gain
        node.left, node.right = len(nodes), len(nodes) + 1
        for rows in (left_rows, right_rows):
            child = Node(rows)
            child.best = best_split(rows)
            nodes.append(child)
        n_leaves += 1
    for nd in nodes:
        if nd.feature == -1:
            nd.value = -eta * seq_sum(grad, nd.rows) / (seq_sum(hess, nd.rows) + lam)
    return nodes


def test_histogram_training_matches_exact_oracle():
    rng = np.random.default_rng(4)
    n = 180
    X = np.round(rng.normal(0, 1, (n, 5)), 1)  # few distinct values per column
    y = np.where(X[:, 1] + 0.3 * X[:, 4] > 0, "a", "b")
    cfg = TrainConfig(eta=0.2, num_leaves=8, min_data_in_leaf=8, max_bin=255,
                      num_boost_round=3, seed=0)
    assert all(np.unique(X[:, j]).size <= cfg.max_bin for j in range(5))
    model = train(X, y, cfg)

    # replay boosting with the oracle grower on identical gradients
    from etsselect.gbdt.training import multiclass_grad_hess
    labels = model.class_labels
    y_idx = np.array([labels.index(v) for v in y])
    scores = np.zeros((n, 2))
    t_i = 0
    for r in range(cfg.num_boost_round):
        grad, hess, _ = multiclass_grad_hess(scores, y_idx)
        for k in range(2):
            tree = model.trees[t_i]
            t_i += 1
            oracle_nodes = exact_tree_oracle(
                X, grad[:, k], hess[:, k], cfg.num_leaves,
                cfg.min_data_in_leaf, cfg.lambda_reg, cfg.eta)
            assert tree.feature.size == len(oracle_nodes)
            for i, nd in enumerate(oracle_nodes):
                assert tree.feature[i] == nd.feature
                assert tree.left[i] == nd.left and tree.right[i] == nd.right
                if nd.feature >= 0:
                    assert tree.threshold[i] == nd.threshold
                    assert tree.gain[i] == pytest.approx(nd.gain, abs=1e-9)
                else:
                    assert tree.value[i] == pytest.approx(nd.value, abs=1e-12)
            for i in range(n):
                node = 0
                while oracle_nodes[node].feature >= 0:
                    nd = oracle_nodes[node]
                    node = nd.left if X[i, nd.feature] <= nd.threshold else nd.right
                scores[i, k] += oracle_nodes[node].value


# train behavior
# ------------------------------------------------------------------------------
def test_single_class_predicts_certainty():
    X = np.random.default_rng(1).normal(0, 1, (50, 4))
    model = train(X, ["only"] * 50, TrainConfig(num_boost_round=10,
                                                min_data_in_leaf=5))
    p = model.predict_proba(np.zeros(4))
    assert p.shape == (1,) and p[0] == 1.0


def test_separable_clusters_perfect_in_five_rounds():
    X, y = two_cluster_data()
    cfg = TrainConfig(eta=0.3, num_leaves=8, min_data_in_leaf=5, max_bin=64,
                      num_boost_round=5, seed=1)
    model = train(X, y, cfg)
    pred = [model.predict_label(X[i]) for i in range(X.shape[0])]
    assert np.mean(np.asarray(pred) == y) == 1.0


def test_deterministic_artifacts():
    X, y = two_cluster_data(300, seed=2)
    cfg = TrainConfig(eta=0.1, num_leaves=6, min_data_in_leaf=10,
                      num_boost_round=8, bagging_fraction=0.8, bagging_freq=2,
                      feature_fraction=0.7, seed=9)
    assert save(train(X, y, cfg)) == save(train(X, y, cfg))


def test_nonfinite_rows_rejected():
    X, y = two_cluster_data(60, seed=3)
    X[10, 2] = np.nan
    with pytest.raises(DegenerateData):
        train(X, y, TrainConfig(min_data_in_leaf=5))


def test_train_logloss_monotone_without_bagging():
    X, y = two_cluster_data(400, seed=5)
    cfg = TrainConfig(eta=0.1, num_leaves=8, min_data_in_leaf=10,
                      num_boost_round=40, seed=1)
    model = train(X, y, cfg)
    losses = np.asarray(model.train_logloss)
    assert np.all(np.diff(losses) <= 1e-12)


def test_leaf_constraints():
    X, y = two_cluster_data(500, seed=6)
    cfg = TrainConfig(eta=0.1, num_leaves=6, min_data_in_leaf=40,
                      num_boost_round=5, seed=2)
    model = train(X, y, cfg)
    binned_counts = _leaf_counts(model, X)
    for tree, counts in binned_counts:
        assert tree.n_leaves <= cfg.num_leaves
        assert min(counts) >= cfg.min_data_in_leaf


def _leaf_counts(model, X):
    out = []
    for tree in model.trees:
        leaf_ids = []
        for i in range(X.shape[0]):
            node = 0
            while tree.feature[node] != -1:
                if X[i, tree.feature[node]] <= tree.threshold[node]:
                    node = tree.left[node]
                else:
                    node = tree.right[node]
            leaf_ids.append(node)
        counts = [leaf_ids.count(l) for l in set(leaf_ids)]
        out.append((tree, counts))
    return out


# predict_proba
# ------------------------------------------------------------------------------
def test_empty_ensemble_uniform():
    X = np.random.default_rng(0).normal(0, 1, (30, 3))
    model = train(X, ["a", "b", "c"] * 10, TrainConfig(num_boost_round=0,
                                                       min_data_in_leaf=2))
    p = model.predict_proba(np.zeros(3))
    assert np.allclose(p, 1 / 3, atol=1e-15)


def test_hand_built_softmax():
    tree_a = Tree(round_index=0, class_index=0,
                  feature=np.array([0, -1, -1], dtype=np.int32),
                  bin_thr=np.array([0, -1, -1], dtype=np.int32),
                  threshold=np.array([0.5, 0.0, 0.0]),
                  left=np.array([1, -1, -1], dtype=np.int32),
                  right=np.array([2, -1, -1], dtype=np.int32),
                  value=np.array([0.0, 1.2, -0.4]),
                  gain=np.array([3.0, 0.0, 0.0]))
    model = TreeEnsemble(n_classes=3, class_labels=("a", "b", "c"),
                         n_features=2, trees=(tree_a,),
                         bin_edges=(np.array([0.5]), np.array([])),
                         gain_by_feature=np.array([3.0, 0.0]))
    x = np.array([0.2, 9.9])
    scores = np.array([1.2, 0.0, 0.0])
    expected = np.exp(scores - scores.max())
    expected /= expected.sum()
    assert np.allclose(model.predict_proba(x), expected, atol=1e-12)


def test_probabilities_sum_to_one():
    X, y = two_cluster_data(200, seed=7)
    model = train(X, y, TrainConfig(num_boost_round=10, min_data_in_leaf=5))
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = model.predict_proba(rng.normal(0, 2, 10))
        assert abs(p.sum() - 1.0) < 1e-9
        assert np.all(p > 0)


def test_dimension_mismatch():
    X, y = two_cluster_data(100, seed=8)
    model = train(X, y, TrainConfig(num_boost_round=2, min_data_in_leaf=5))
    with pytest.raises(DimensionMismatch):
        model.predict_proba(np.zeros(11))


# feature_gain
# ------------------------------------------------------------------------------
def test_gain_concentrates_on_informative_feature():
    X, y = two_cluster_data()
    model = train(X, y, TrainConfig(eta=0.3, num_leaves=8, min_data_in_leaf=5,
                                    num_boost_round=5, seed=1))
    ranked = model.feature_gain()
    assert ranked[0][0] == "f3"
    assert ranked[0][1] / model.gain_by_feature.sum() > 0.99


def test_constant_feature_never_gains():
    X, y = two_cluster_data(300, seed=9)
    X[:, 7] = 1.0
    model = train(X, y, TrainConfig(num_boost_round=10, min_data_in_leaf=5))
    assert model.gain_by_feature[7] == 0.0


def test_gain_accounting_identity():
    X, y = two_cluster_data(300, seed=10)
    model = train(X, y, TrainConfig(num_boost_round=10, min_data_in_leaf=5))
    per_split = sum(float(t.gain.sum()) for t in model.trees)
    assert model.gain_by_feature.sum() == pytest.approx(per_split, rel=1e-12)


# serialization
# ------------------------------------------------------------------------------
def test_round_trip_predictions_bitwise():
    X, y = two_cluster_data(300, seed=11)
    model = train(X, y, TrainConfig(num_boost_round=10, min_data_in_leaf=5,
                                    bagging_fraction=0.8, bagging_freq=2,
                                    feature_fraction=0.6, seed=3))
    clone = load(save(model))
    rng = np.random.default_rng(2)
    for _ in range(100):
        x = rng.normal(0, 2, 10)
        assert np.array_equal(model.predict_proba(x), clone.predict_proba(x))


def test_truncated_artifact_rejected():
    X, y = two_cluster_data(100, seed=12)
    blob = save(train(X, y, TrainConfig(num_boost_round=2, min_data_in_leaf=5)))
    with pytest.raises(CorruptArtifact):
        load(blob[: len(blob) // 2])
    with pytest.raises(CorruptArtifact):
        load(blob[:-1] + bytes([blob[-1] ^ 0xFF]))


def test_newer_version_rejected():
    import struct
    import zlib
    X, y = two_cluster_data(100, seed=13)
    blob = save(train(X, y, TrainConfig(num_boost_round=1, min_data_in_leaf=5)))
    payload = bytearray(blob[:-4])
    payload[4:8] = struct.pack("<I", 99)
    payload = bytes(payload)
    with pytest.raises(VersionMismatch):
        load(payload + struct.pack("<I", zlib.crc32(payload)))


# tuning
# ------------------------------------------------------------------------------
def test_roc_auc_known_cases():
    assert roc_auc(np.array([0.1, 0.4, 0.35, 0.8]),
                   np.array([False, False, True, True])) == pytest.approx(0.75)
    assert roc_auc(np.array([1.0, 1.0]), np.array([True, False])) == pytest.approx(0.5)


def test_grid_search_prefers_capable_config():
    X, y = two_cluster_data(300, seed=14)
    base = TrainConfig(eta=0.3, min_data_in_leaf=5, seed=0)
    best, results = grid_search(X, y, base,
                                {"num_boost_round": [0, 8], "num_leaves": [4]},
                                folds=3, seed=1)
    assert best.num_boost_round == 8
    assert len(results) == 2
