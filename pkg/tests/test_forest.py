import json
import os
import subprocess
import sys

import numpy as np
import pytest

from oransec.attacklab import (
    ForestModel,
    ForestParams,
    GeneratorConfig,
    generate_dataset,
    holdout_accuracy,
    train_forest,
    train_test_split,
)


@pytest.fixture(scope="module")
def small_dataset():
    return generate_dataset(GeneratorConfig(), 1500, seed=21)


class TestTraining:
    def test_deterministic_per_seed(self, small_dataset):
        p = ForestParams(n_trees=10, max_depth=6)
        a = train_forest(small_dataset.X, small_dataset.labels, p, seed=5)
        b = train_forest(small_dataset.X, small_dataset.labels, p, seed=5)
        assert a.canonical_json() == b.canonical_json()
        c = train_forest(small_dataset.X, small_dataset.labels, p, seed=6)
        assert a.canonical_json() != c.canonical_json()

    def test_single_class_predicts_that_class(self):
        rng = np.random.Generator(np.random.PCG64(1))
        X = rng.uniform(size=(100, 4))
        y = np.full(100, 2, dtype=np.int64)
        model = train_forest(X, y, ForestParams(n_trees=5, max_depth=3), seed=1)
        assert np.all(model.predict(rng.uniform(size=(20, 4))) == 2)

    def test_empty_dataset_rejected(self):
        with pytest.raises(ValueError):
            train_forest(np.empty((0, 3)), np.empty(0, dtype=np.int64),
                         ForestParams(), seed=1)

    def test_holdout_accuracy_bound(self, small_dataset):
        train_idx, test_idx = train_test_split(len(small_dataset), 0.2, seed=4)
        model = train_forest(small_dataset.X[train_idx], small_dataset.labels[train_idx],
                             ForestParams(), seed=4)
        acc = holdout_accuracy(model, small_dataset.X[test_idx],
                               small_dataset.labels[test_idx])
        assert acc >= 0.90

    def test_serialization_round_trip(self, small_dataset):
        p = ForestParams(n_trees=4, max_depth=4)
        model = train_forest(small_dataset.X, small_dataset.labels, p, seed=2)
        clone = ForestModel.from_doc(json.loads(json.dumps(model.to_doc())))
        assert clone.canonical_json() == model.canonical_json()
        assert np.array_equal(clone.predict(small_dataset.X[:50]),
                              model.predict(small_dataset.X[:50]))


class TestPrediction:
    def _stump(self, klass_left, klass_right, n_classes=4):
        # single tree: x0 <= 0.5 -> left leaf, else right leaf
        return {
            "n_classes": n_classes,
            "feature_names": ["f0"],
            "params": {"n_trees": 1, "max_depth": 1, "min_samples_split": 2,
                       "features_per_split": 1, "bootstrap": False},
            "seed": 0,
            "node_feature": [0, -1, -1],
            "node_threshold": [0.5, 0.0, 0.0],
            "node_left": [1, -1, -1],
            "node_right": [2, -1, -1],
            "node_class": [-1, klass_left, klass_right],
            "tree_offsets": [0, 3],
        }

    def _forest_of_stumps(self, leaf_pairs, n_classes=4):
        docs = [self._stump(l, r, n_classes) for l, r in leaf_pairs]
        merged = docs[0]
        for doc in docs[1:]:
            base = len(merged["node_feature"])
            merged["node_feature"] += doc["node_feature"]
            merged["node_threshold"] += doc["node_threshold"]
            merged["node_left"] += [c if c < 0 else c + base for c in doc["node_left"]]
            merged["node_right"] += [c if c < 0 else c + base for c in doc["node_right"]]
            merged["node_class"] += doc["node_class"]
            merged["tree_offsets"].append(base + 3)
        merged["params"]["n_trees"] = len(leaf_pairs)
        return ForestModel.from_doc(merged)

    def test_unanimous_vote(self):
        model = self._forest_of_stumps([(3, 3)] * 4)
        assert model.predict_one(np.array([0.1])) == 3

    def test_two_two_tie_goes_to_enumeration_order(self):
        # two trees vote Excellent (0), two vote Poor (3) at x0 = 0.1
        model = self._forest_of_stumps([(0, 3), (0, 3), (3, 0), (3, 0)])
        assert model.predict_one(np.array([0.1])) == 0

    def test_dimension_mismatch_rejected(self, small_dataset):
        model = train_forest(small_dataset.X, small_dataset.labels,
                             ForestParams(n_trees=2, max_depth=3), seed=1)
        with pytest.raises(ValueError):
            model.predict(np.zeros((1, 3)))

    def test_training_point_deep_in_class_region(self, small_dataset):
        train_idx, _ = train_test_split(len(small_dataset), 0.2, seed=4)
        model = train_forest(small_dataset.X[train_idx], small_dataset.labels[train_idx],
                             ForestParams(), seed=4)
        # frozen spot check: the first training row sits deep in its component
        i = int(train_idx[0])
        assert model.predict_one(small_dataset.X[i]) == small_dataset.labels[i]


NUMPY_BACKEND_SNIPPET = """
import json
from oransec.attacklab import ForestParams, GeneratorConfig, generate_dataset, train_forest
from oransec.attacklab.kernels import USING_NUMBA
assert not USING_NUMBA
ds = generate_dataset(GeneratorConfig(), 800, seed=21)
model = train_forest(ds.X, ds.labels, ForestParams(n_trees=6, max_depth=5), seed=5)
print(model.canonical_json())
"""


@pytest.mark.slow
def test_numba_and_numpy_backends_build_identical_forests():
    ds = generate_dataset(GeneratorConfig(), 800, seed=21)
    model = train_forest(ds.X, ds.labels, ForestParams(n_trees=6, max_depth=5), seed=5)
    env = dict(os.environ, ORANSEC_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", NUMPY_BACKEND_SNIPPET],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == model.canonical_json()
