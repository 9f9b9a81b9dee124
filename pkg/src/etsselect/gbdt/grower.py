"""Numba tree-growing kernel: leaf-wise, histogram-based, deterministic.

Trees live in flat parallel arrays.  Internal nodes store the split feature
and the bin index threshold (rows with bin <= threshold go left); leaves
store the shrunken Newton value and have feature = -1.
"""

import numpy as np
from numba import njit

LEAF = -1


@njit(cache=True)
def _best_split_for_leaf(binned, grad, hess, rows, start, end, features,
                         n_bins, min_data, lam, min_gain,
                         g_hist, h_hist, c_hist):
    """Scan allowed features for the max-gain split of rows[start:end].

    Returns (gain, feature, bin_thr, n_left); gain <= 0 means no valid split.
    Ties keep the first candidate in (feature order, bin order).
    """
    g_total = 0.0
    h_total = 0.0
    for r in range(start, end):
        g_total += grad[rows[r]]
        h_total += hess[rows[r]]
    count = end - start
    parent_score = g_total * g_total / (h_total + lam)

    best_gain = min_gain
    best_feature = -1
    best_bin = -1
    best_left = 0
    for fi in range(features.shape[0]):
        f = features[fi]
        nb = n_bins[f]
        if nb < 2:
            continue
        for b in range(nb):
            g_hist[b] = 0.0
            h_hist[b] = 0.0
            c_hist[b] = 0
        for r in range(start, end):
            row = rows[r]
            b = binned[row, f]
            g_hist[b] += grad[row]
            h_hist[b] += hess[row]
            c_hist[b] += 1
        gl = 0.0
        hl = 0.0
        cl = 0
        for b in range(nb - 1):
            gl += g_hist[b]
            hl += h_hist[b]
            cl += c_hist[b]
            cr = count - cl
            if cl < min_data or cr < min_data:
                continue
            gr = g_total - gl
            hr = h_total - hl
            gain = gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent_score
            if gain > best_gain:
                best_gain = gain
                best_feature = f
                best_bin = b
                best_left = cl
    return best_gain, best_feature, best_bin, best_left


@njit(cache=True)
def grow_tree(binned, grad, hess, bag_rows, features, n_bins,
              num_leaves, min_data, lam, min_gain, eta):
    """Grow one tree on the bagged rows; returns flat node arrays plus the
    per-node split gain (0 at leaves)."""
    max_nodes = 2 * num_leaves - 1
    feature = np.full(max_nodes, LEAF, dtype=np.int32)
    bin_thr = np.full(max_nodes, -1, dtype=np.int32)
    left = np.full(max_nodes, -1, dtype=np.int32)
    right = np.full(max_nodes, -1, dtype=np.int32)
    value = np.zeros(max_nodes)
    gain_arr = np.zeros(max_nodes)

    rows = bag_rows.copy()
    node_start = np.zeros(max_nodes, dtype=np.int64)
    node_end = np.zeros(max_nodes, dtype=np.int64)
    cand_gain = np.zeros(max_nodes)
    cand_feature = np.full(max_nodes, -1, dtype=np.int32)
    cand_bin = np.full(max_nodes, -1, dtype=np.int32)
    is_open = np.zeros(max_nodes, dtype=np.uint8)

    g_hist = np.zeros(256)
    h_hist = np.zeros(256)
    c_hist = np.zeros(256, dtype=np.int64)

    node_start[0] = 0
    node_end[0] = rows.shape[0]
    n_nodes = 1
    n_leaves = 1
    g, f, b, _ = _best_split_for_leaf(binned, grad, hess, rows, 0, rows.shape[0],
                                      features, n_bins, min_data, lam, min_gain,
                                      g_hist, h_hist, c_hist)
    cand_gain[0] = g
    cand_feature[0] = f
    cand_bin[0] = b
    is_open[0] = 1

    while n_leaves < num_leaves:
        best_node = -1
        best_gain = min_gain
        for i in range(n_nodes):
            if is_open[i] == 1 and cand_feature[i] >= 0 and cand_gain[i] > best_gain:
                best_gain = cand_gain[i]
                best_node = i
        if best_node < 0:
            break

        node = best_node
        f = cand_feature[node]
        b = cand_bin[node]
        start = node_start[node]
        end = node_end[node]

        # stable two-pass partition keeps row order deterministic
        tmp = np.empty(end - start, dtype=rows.dtype)
        n_left_rows = 0
        for r in range(start, end):
            if binned[rows[r], f] <= b:
                tmp[n_left_rows] = rows[r]
                n_left_rows += 1
        n_right_start = n_left_rows
        for r in range(start, end):
            if binned[rows[r], f] > b:
                tmp[n_right_start] = rows[r]
                n_right_start += 1
        for i in range(end - start):
            rows[start + i] = tmp[i]

        li = n_nodes
        ri = n_nodes + 1
        n_nodes += 2
        feature[node] = f
        bin_thr[node] = b
        left[node] = li
        right[node] = ri
        gain_arr[node] = cand_gain[node]
        is_open[node] = 0

        node_start[li] = start
        node_end[li] = start + n_left_rows
        node_start[ri] = start + n_left_rows
        node_end[ri] = end
        for child in (li, ri):
            g, cf, cb, _ = _best_split_for_leaf(
                binned, grad, hess, rows, node_start[child], node_end[child],
                features, n_bins, min_data, lam, min_gain,
                g_hist, h_hist, c_hist)
            cand_gain[child] = g
            cand_feature[child] = cf
            cand_bin[child] = cb
            is_open[child] = 1
        n_leaves += 1

    for i in range(n_nodes):
        if feature[i] == LEAF:
            gs = 0.0
            hs = 0.0
            for r in range(node_start[i], node_end[i]):
                gs += grad[rows[r]]
                hs += hess[rows[r]]
            value[i] = -eta * gs / (hs + lam)

    return (feature[:n_nodes], bin_thr[:n_nodes], left[:n_nodes],
            right[:n_nodes], value[:n_nodes], gain_arr[:n_nodes])


@njit(cache=True)
def predict_binned(binned, feature, bin_thr, left, right, value, out):
    """Add this tree's leaf values to out for every row of the binned matrix."""
    n = binned.shape[0]
    for i in range(n):
        node = 0
        while feature[node] != LEAF:
            if binned[i, feature[node]] <= bin_thr[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] += value[node]


@njit(cache=True)
def predict_raw(x, feature, threshold, left, right, value):
    """Leaf value for one raw (unbinned) feature vector."""
    node = 0
    while feature[node] != LEAF:
        if x[feature[node]] <= threshold[node]:
            node = left[node]
        else:
            node = right[node]
    return value[node]
