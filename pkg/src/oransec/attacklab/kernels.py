"""Hot numeric kernels for the attack lab.

Two interchangeable backends: numba @njit (default when importable) and a
pure-numpy path selected with ORANSEC_NUMBA=0. Split scores are built from
exact integer class counts, so both backends pick bit-identical splits and
produce identical forests; `benchmarks/bench_kernels.py` compares speed.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_enabled() -> bool:
    if os.environ.get("ORANSEC_NUMBA", "1") == "0":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USING_NUMBA = _numba_enabled()


def _best_split_py(Xf: np.ndarray, y: np.ndarray, n_classes: int):
    """Best Gini split over the columns of Xf (a feature subset).

    Returns (column index, threshold, score); score = sum_c nl_c^2/nl +
    sum_c nr_c^2/nr, to be compared against the parent's sum_c n_c^2/n.
    Column -1 means no valid split exists.
    """
    m = Xf.shape[0]
    best_score = -1.0
    best_col = -1
    best_thr = 0.0
    if m < 2:
        return best_col, best_thr, best_score
    eye = np.eye(n_classes, dtype=np.int64)
    for j in range(Xf.shape[1]):
        order = np.argsort(Xf[:, j], kind="mergesort")
        sv = Xf[order, j]
        cum = np.cumsum(eye[y[order]], axis=0)
        total = cum[-1]
        # split after position i (1..m-1): left = first i sorted samples
        left_sq = np.square(cum[:-1]).sum(axis=1)
        right_sq = np.square(total[None, :] - cum[:-1]).sum(axis=1)
        i = np.arange(1, m)
        score = left_sq / i + right_sq / (m - i)
        score[sv[1:] == sv[:-1]] = -np.inf
        pos = int(np.argmax(score))
        if score[pos] > best_score:
            best_score = float(score[pos])
            best_col = j
            best_thr = (sv[pos] + sv[pos + 1]) / 2.0
    return best_col, best_thr, best_score


def _forest_votes_py(node_feature, node_threshold, node_left, node_right,
                     node_class, tree_offsets, X):
    """Per-sample class vote counts over all trees (leaf argmax votes)."""
    n = X.shape[0]
    n_classes = int(node_class.max()) + 1 if node_class.size else 1
    votes = np.zeros((n, n_classes), dtype=np.int64)
    n_trees = tree_offsets.shape[0] - 1
    for i in range(n):
        x = X[i]
        for t in range(n_trees):
            node = tree_offsets[t]
            while node_feature[node] >= 0:
                if x[node_feature[node]] <= node_threshold[node]:
                    node = node_left[node]
                else:
                    node = node_right[node]
            votes[i, node_class[node]] += 1
    return votes


if USING_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _best_split_nb(Xf, y, n_classes):  # pragma: no cover - mirrored by _best_split_py
        m, k = Xf.shape
        best_score = -1.0
        best_col = -1
        best_thr = 0.0
        if m < 2:
            return best_col, best_thr, best_score
        for j in range(k):
            order = np.argsort(Xf[:, j], kind="mergesort")
            left = np.zeros(n_classes, dtype=np.int64)
            right = np.zeros(n_classes, dtype=np.int64)
            for i in range(m):
                right[y[i]] += 1
            sl = np.int64(0)
            sr = np.int64(0)
            for c in range(n_classes):
                sr += right[c] * right[c]
            for i in range(1, m):
                c = y[order[i - 1]]
                sl += 2 * left[c] + 1
                left[c] += 1
                sr -= 2 * right[c] - 1
                right[c] -= 1
                if Xf[order[i], j] == Xf[order[i - 1], j]:
                    continue
                score = sl / i + sr / (m - i)
                if score > best_score:
                    best_score = score
                    best_col = j
                    best_thr = (Xf[order[i - 1], j] + Xf[order[i], j]) / 2.0
        return best_col, best_thr, best_score

    @njit(cache=True)
    def _forest_votes_nb(node_feature, node_threshold, node_left, node_right,
                         node_class, tree_offsets, X):  # pragma: no cover
        n = X.shape[0]
        n_classes = 1
        for v in node_class:
            if v + 1 > n_classes:
                n_classes = v + 1
        votes = np.zeros((n, n_classes), dtype=np.int64)
        n_trees = tree_offsets.shape[0] - 1
        for i in range(n):
            for t in range(n_trees):
                node = tree_offsets[t]
                while node_feature[node] >= 0:
                    if X[i, node_feature[node]] <= node_threshold[node]:
                        node = node_left[node]
                    else:
                        node = node_right[node]
                votes[i, node_class[node]] += 1
        return votes

    def best_split(Xf, y, n_classes):
        col, thr, score = _best_split_nb(
            np.ascontiguousarray(Xf), np.ascontiguousarray(y), n_classes)
        return int(col), float(thr), float(score)

    def forest_votes(node_feature, node_threshold, node_left, node_right,
                     node_class, tree_offsets, X):
        return _forest_votes_nb(node_feature, node_threshold, node_left,
                                node_right, node_class, tree_offsets,
                                np.ascontiguousarray(X))
else:
    def best_split(Xf, y, n_classes):
        col, thr, score = _best_split_py(Xf, y, n_classes)
        return int(col), float(thr), float(score)

    forest_votes = _forest_votes_py


def parent_score(y: np.ndarray, n_classes: int) -> float:
    """sum_c n_c^2 / n, the no-split baseline for best_split scores."""
    counts = np.bincount(y, minlength=n_classes).astype(np.int64)
    return float(np.square(counts).sum() / y.shape[0])
