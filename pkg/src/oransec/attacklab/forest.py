"""Random forest QoE classifier built from scratch.

Trees are grown by recursive Gini splits on bootstrap samples with a
random feature subset per split; prediction is a majority vote over the
trees' leaf argmaxes, ties resolved by class enumeration order. Fully
deterministic for a given seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 50
    max_depth: int = 8
    min_samples_split: int = 2
    features_per_split: int | None = None  # default round(sqrt(d))
    bootstrap: bool = True

    def resolved_features_per_split(self, d: int) -> int:
        if self.features_per_split is not None:
            return max(1, min(d, self.features_per_split))
        return max(1, int(round(np.sqrt(d))))


@dataclass
class ForestModel:
    n_classes: int
    feature_names: tuple[str, ...]
    params: ForestParams
    seed: int
    # flat node arrays over all trees; feature == -1 marks a leaf
    node_feature: np.ndarray = field(repr=False, default=None)
    node_threshold: np.ndarray = field(repr=False, default=None)
    node_left: np.ndarray = field(repr=False, default=None)
    node_right: np.ndarray = field(repr=False, default=None)
    node_class: np.ndarray = field(repr=False, default=None)
    tree_offsets: np.ndarray = field(repr=False, default=None)

    @property
    def n_trees(self) -> int:
        return self.tree_offsets.shape[0] - 1

    def votes(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != len(self.feature_names):
            raise ValueError(f"expected {len(self.feature_names)} features, got {X.shape[1]}")
        raw = kernels.forest_votes(self.node_feature, self.node_threshold,
                                   self.node_left, self.node_right,
                                   self.node_class, self.tree_offsets, X)
        if raw.shape[1] < self.n_classes:  # no tree ever votes the last class
            full = np.zeros((raw.shape[0], self.n_classes), dtype=np.int64)
            full[:, :raw.shape[1]] = raw
            return full
        return raw

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Majority-vote class per row; ties go to the lowest class index."""
        return np.argmax(self.votes(X), axis=1)

    def predict_one(self, x: np.ndarray) -> int:
        return int(self.predict(x[None, :])[0])

    def to_doc(self) -> dict:
        return {
            "n_classes": self.n_classes,
            "feature_names": list(self.feature_names),
            "params": {
                "n_trees": self.params.n_trees,
                "max_depth": self.params.max_depth,
                "min_samples_split": self.params.min_samples_split,
                "features_per_split": self.params.features_per_split,
                "bootstrap": self.params.bootstrap,
            },
            "seed": self.seed,
            "node_feature": self.node_feature.tolist(),
            "node_threshold": self.node_threshold.tolist(),
            "node_left": self.node_left.tolist(),
            "node_right": self.node_right.tolist(),
            "node_class": self.node_class.tolist(),
            "tree_offsets": self.tree_offsets.tolist(),
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_doc(cls, doc: dict) -> "ForestModel":
        return cls(
            n_classes=int(doc["n_classes"]),
            feature_names=tuple(doc["feature_names"]),
            params=ForestParams(**doc["params"]),
            seed=int(doc["seed"]),
            node_feature=np.array(doc["node_feature"], dtype=np.int64),
            node_threshold=np.array(doc["node_threshold"], dtype=np.float64),
            node_left=np.array(doc["node_left"], dtype=np.int64),
            node_right=np.array(doc["node_right"], dtype=np.int64),
            node_class=np.array(doc["node_class"], dtype=np.int64),
            tree_offsets=np.array(doc["tree_offsets"], dtype=np.int64),
        )


class _TreeBuilder:
    def __init__(self, X, y, n_classes, params, rng):
        self.X = X
        self.y = y
        self.n_classes = n_classes
        self.params = params
        self.rng = rng
        self.d = X.shape[1]
        self.k = params.resolved_features_per_split(self.d)
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.klass: list[int] = []

    def _leaf(self, counts) -> int:
        idx = len(self.feature)
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.klass.append(int(np.argmax(counts)))
        return idx

    def build(self, indices: np.ndarray, depth: int) -> int:
        y_node = self.y[indices]
        counts = np.bincount(y_node, minlength=self.n_classes)
        if (depth >= self.params.max_depth
                or indices.shape[0] < self.params.min_samples_split
                or int(counts.max()) == indices.shape[0]):
            return self._leaf(counts)
        subset = np.sort(self.rng.choice(self.d, size=self.k, replace=False))
        col, thr, score = kernels.best_split(self.X[np.ix_(indices, subset)],
                                             y_node, self.n_classes)
        if col < 0 or score <= kernels.parent_score(y_node, self.n_classes):
            return self._leaf(counts)
        feat = int(subset[col])
        go_left = self.X[indices, feat] <= thr
        left_idx, right_idx = indices[go_left], indices[~go_left]
        if left_idx.size == 0 or right_idx.size == 0:
            return self._leaf(counts)
        node = len(self.feature)
        self.feature.append(feat)
        self.threshold.append(thr)
        self.left.append(-1)
        self.right.append(-1)
        self.klass.append(-1)
        self.left[node] = self.build(left_idx, depth + 1)
        self.right[node] = self.build(right_idx, depth + 1)
        return node


def train_forest(X: np.ndarray, y: np.ndarray, params: ForestParams, seed: int,
                 n_classes: int = 4,
                 feature_names: tuple[str, ...] | None = None) -> ForestModel:
    """Grow the forest; per-tree RNG streams are derived from the seed."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    if X.shape[0] == 0:
        raise ValueError("empty dataset")
    if feature_names is None:
        feature_names = tuple(f"f{i}" for i in range(X.shape[1]))
    streams = np.random.SeedSequence(seed).spawn(params.n_trees)

    feature, threshold, left, right, klass, offsets = [], [], [], [], [], [0]
    for t in range(params.n_trees):
        rng = np.random.Generator(np.random.PCG64(streams[t]))
        if params.bootstrap:
            indices = rng.integers(0, X.shape[0], size=X.shape[0])
        else:
            indices = np.arange(X.shape[0])
        builder = _TreeBuilder(X, y, n_classes, params, rng)
        root = builder.build(np.asarray(indices, dtype=np.int64), 0)
        assert root == 0
        base = offsets[-1]
        feature.extend(builder.feature)
        threshold.extend(builder.threshold)
        left.extend(c if c < 0 else c + base for c in builder.left)
        right.extend(c if c < 0 else c + base for c in builder.right)
        klass.extend(builder.klass)
        offsets.append(base + len(builder.feature))

    return ForestModel(
        n_classes=n_classes,
        feature_names=feature_names,
        params=params,
        seed=seed,
        node_feature=np.array(feature, dtype=np.int64),
        node_threshold=np.array(threshold, dtype=np.float64),
        node_left=np.array(left, dtype=np.int64),
        node_right=np.array(right, dtype=np.int64),
        node_class=np.array(klass, dtype=np.int64),
        tree_offsets=np.array(offsets, dtype=np.int64),
    )


def holdout_accuracy(model: ForestModel, X: np.ndarray, y: np.ndarray) -> float:
    return float(np.mean(model.predict(X) == y))


def train_test_split(n: int, test_fraction: float, seed: int):
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(n)
    n_test = int(round(n * test_fraction))
    return order[n_test:], order[:n_test]
