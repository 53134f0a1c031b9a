"""Frozen traffic-steering demo fixture: dataset, classifier and attack
defaults shared by the CLI, the service and the acceptance suite."""

from __future__ import annotations

from functools import lru_cache

from .forest import ForestModel, ForestParams, holdout_accuracy, train_forest, train_test_split
from .hopskipjump import HsjaParams
from .kpi import FEATURE_NAMES, GeneratorConfig, TrafficDataset, generate_dataset

DEMO_N = 5000
DEMO_DATA_SEED = 7
DEMO_FOREST_SEED = 11
DEMO_ATTACK_SEED = 13
DEMO_TEST_FRACTION = 0.2


def demo_config() -> GeneratorConfig:
    return GeneratorConfig()


def demo_params() -> HsjaParams:
    return HsjaParams(seed=DEMO_ATTACK_SEED)


@lru_cache(maxsize=1)
def demo_dataset() -> TrafficDataset:
    return generate_dataset(demo_config(), DEMO_N, DEMO_DATA_SEED)


@lru_cache(maxsize=1)
def demo_split() -> tuple:
    return train_test_split(DEMO_N, DEMO_TEST_FRACTION, DEMO_FOREST_SEED)


@lru_cache(maxsize=1)
def demo_model() -> ForestModel:
    dataset = demo_dataset()
    train_idx, _ = demo_split()
    return train_forest(dataset.X[train_idx], dataset.labels[train_idx],
                        ForestParams(), DEMO_FOREST_SEED,
                        n_classes=4, feature_names=FEATURE_NAMES)


def demo_holdout_accuracy() -> float:
    dataset = demo_dataset()
    _, test_idx = demo_split()
    return holdout_accuracy(demo_model(), dataset.X[test_idx], dataset.labels[test_idx])
