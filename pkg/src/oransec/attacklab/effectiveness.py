"""Empirical attack-effectiveness estimation over repeated evasion runs.

Success follows the demonstration's framing: the attack succeeded when the
model's predicted class and the expert threshold label disagree on the
final adversarial sample. Rates can feed back into the catalog as
effectiveness overrides, keyed by technique id.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .forest import ForestModel
from .hopskipjump import AttackTrace, HsjaParams, hop_skip_jump
from .kpi import LabelingPolicy, QoEClass, TrafficDataset, denormalize, normalize


class EstimateError(ValueError):
    pass


@dataclass(frozen=True)
class EffectivenessEstimate:
    technique_id: str
    trials: int
    successes: int
    success_rate: float
    wilson_low: float
    wilson_high: float
    median_queries: float
    seed: int

    def to_doc(self) -> dict:
        return {
            "technique_id": self.technique_id,
            "trials": self.trials,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "wilson_low": self.wilson_low,
            "wilson_high": self.wilson_high,
            "median_queries": self.median_queries,
            "seed": self.seed,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, separators=(",", ":"))


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """95% Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def _binarized_oracle(model: ForestModel, target_class: int):
    """Decision oracle in normalized feature space: 1 = model says target."""

    def oracle(z: np.ndarray) -> int:
        return 1 if model.predict_one(denormalize(z)) == target_class else 0

    return oracle


def attack_pair_pool(model: ForestModel, dataset: TrafficDataset,
                     source_class: int, target_class: int):
    """Candidate indices for sources (deep in the source class, per both the
    labeler and the model) and inits (model predicts the target class)."""
    preds = model.predict(dataset.X)
    source_idx = np.flatnonzero((dataset.labels == source_class) & (preds == source_class))
    init_idx = np.flatnonzero(preds == target_class)
    return source_idx, init_idx


def run_attack_trial(model: ForestModel, dataset: TrafficDataset, params: HsjaParams,
                     source_i: int, init_i: int,
                     target_class: int = QoEClass.POOR) -> AttackTrace:
    """One evasion run in normalized feature space against the model's decision."""
    oracle = _binarized_oracle(model, target_class)
    z_source = normalize(dataset.X[source_i])
    z_init = normalize(dataset.X[init_i])
    d = z_source.shape[0]
    return hop_skip_jump(oracle, z_source, source_class=0, init=z_init,
                         params=params, bounds=(np.zeros(d), np.ones(d)))


def trial_success(trace: AttackTrace, model: ForestModel,
                  policy: LabelingPolicy) -> bool:
    """Labeler/classifier disagreement on the final adversarial sample."""
    if not trace.success or trace.best_adversarial is None:
        return False
    final = denormalize(trace.best_adversarial)
    predicted = int(model.predict(final[None, :])[0])
    labeled = int(policy.label_features(final[None, :])[0])
    return predicted != labeled


def estimate_effectiveness(model: ForestModel, dataset: TrafficDataset,
                           params: HsjaParams, trials: int, seed: int,
                           policy: LabelingPolicy | None = None,
                           source_class: int = QoEClass.EXCELLENT,
                           target_class: int = QoEClass.POOR,
                           technique_id: str = "AT2.2",
                           parallel: bool = False) -> EffectivenessEstimate:
    """Run independent attack trials and report the empirical success rate.

    Per-trial RNG streams are spawned from the master seed by trial index,
    so sequential and concurrent execution give identical results.
    """
    if trials < 1:
        raise EstimateError("trials must be >= 1")
    policy = policy or LabelingPolicy()
    source_idx, init_idx = attack_pair_pool(model, dataset, source_class, target_class)
    if source_idx.size == 0 or init_idx.size == 0:
        raise EstimateError("dataset has no valid source/init pairs for the chosen classes")

    streams = np.random.SeedSequence(seed).spawn(trials)

    init_Z = normalize(dataset.X[init_idx])

    def run_trial(i: int) -> tuple[bool, int]:
        rng = np.random.Generator(np.random.PCG64(streams[i]))
        source_i = int(source_idx[rng.integers(0, source_idx.size)])
        # start from the closest adversarial example, as an attacker would
        z_source = normalize(dataset.X[source_i])
        init_i = int(init_idx[np.argmin(np.linalg.norm(init_Z - z_source, axis=1))])
        trial_seed = int(rng.integers(0, 2**31 - 1))
        trial_params = HsjaParams(
            norm=params.norm,
            max_iterations=params.max_iterations,
            init_gradient_samples=params.init_gradient_samples,
            binary_search_tolerance=params.binary_search_tolerance,
            query_budget=params.query_budget,
            seed=trial_seed,
        )
        trace = run_attack_trial(model, dataset, trial_params, source_i, init_i,
                                 target_class)
        return trial_success(trace, model, policy), trace.queries

    if parallel:
        with ThreadPoolExecutor(max_workers=min(8, trials)) as pool:
            outcomes = list(pool.map(run_trial, range(trials)))
    else:
        outcomes = [run_trial(i) for i in range(trials)]

    successes = sum(1 for ok, _ in outcomes if ok)
    low, high = wilson_interval(successes, trials)
    return EffectivenessEstimate(
        technique_id=technique_id,
        trials=trials,
        successes=successes,
        success_rate=successes / trials,
        wilson_low=low,
        wilson_high=high,
        median_queries=float(np.median([q for _, q in outcomes])),
        seed=seed,
    )


def append_estimate(path: str | Path, estimate: EffectivenessEstimate) -> None:
    """Append to the estimates file consumable as catalog Ef overrides."""
    path = Path(path)
    entries = json.loads(path.read_text()) if path.exists() else []
    entries.append(estimate.to_doc())
    path.write_text(json.dumps(entries, indent=1) + "\n")
