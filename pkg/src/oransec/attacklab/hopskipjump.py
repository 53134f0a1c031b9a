"""Decision-based boundary evasion attack (HopSkipJump).

Each iteration (1) binary-searches the segment from the source toward the
current adversarial point until the decision boundary is pinned within a
relative tolerance, (2) estimates the boundary-normal direction by Monte
Carlo sign probing, and (3) takes a geometric step along it, halving until
the stepped point stays adversarial. Only the oracle's final decision is
consumed; every oracle call is counted against the query budget.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class HsjaParams:
    norm: str = "L2"
    max_iterations: int = 40
    init_gradient_samples: int = 100
    binary_search_tolerance: float = 1e-3
    query_budget: int = 25_000
    seed: int = 0

    def __post_init__(self):
        if self.norm != "L2":
            raise ValueError("only the L2 norm is supported")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.init_gradient_samples < 1:
            raise ValueError("init_gradient_samples must be >= 1")
        if self.binary_search_tolerance <= 0:
            raise ValueError("binary_search_tolerance must be > 0")
        if self.query_budget < 0:
            raise ValueError("query_budget must be >= 0")


class PreconditionError(ValueError):
    """The init sample is not adversarial for the oracle."""


class _BudgetExhausted(Exception):
    pass


class CountingOracle:
    """Wraps a decision oracle, counting calls and enforcing the budget."""

    def __init__(self, oracle: Callable[[np.ndarray], int], budget: int):
        self._oracle = oracle
        self.budget = budget
        self.queries = 0

    def __call__(self, x: np.ndarray) -> int:
        if self.queries >= self.budget:
            raise _BudgetExhausted
        self.queries += 1
        return int(self._oracle(x))


@dataclass(frozen=True)
class IterationRecord:
    boundary: np.ndarray
    direction: np.ndarray
    step_size: float
    distance_to_source: float  # of the boundary point
    best_distance: float  # running best after this iteration
    queries_used: int


@dataclass
class AttackTrace:
    source: np.ndarray
    source_class: int
    init: np.ndarray
    params: HsjaParams
    iterations: list[IterationRecord] = field(default_factory=list)
    adversarial_points: list[np.ndarray] = field(default_factory=list)
    best_adversarial: np.ndarray | None = None
    best_distance: float = math.inf
    queries: int = 0
    success: bool = False

    def best_distance_series(self) -> list[float]:
        return [rec.best_distance for rec in self.iterations]

    def to_doc(self) -> dict:
        return {
            "source": self.source.tolist(),
            "source_class": self.source_class,
            "init": self.init.tolist(),
            "params": {
                "norm": self.params.norm,
                "max_iterations": self.params.max_iterations,
                "init_gradient_samples": self.params.init_gradient_samples,
                "binary_search_tolerance": self.params.binary_search_tolerance,
                "query_budget": self.params.query_budget,
                "seed": self.params.seed,
            },
            "iterations": [
                {
                    "boundary": rec.boundary.tolist(),
                    "direction": rec.direction.tolist(),
                    "step_size": rec.step_size,
                    "distance_to_source": rec.distance_to_source,
                    "best_distance": rec.best_distance,
                    "queries_used": rec.queries_used,
                }
                for rec in self.iterations
            ],
            "best_adversarial": None if self.best_adversarial is None
            else self.best_adversarial.tolist(),
            "best_distance": None if math.isinf(self.best_distance) else self.best_distance,
            "queries": self.queries,
            "success": self.success,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, separators=(",", ":"))


def trace_path_csv(trace: AttackTrace,
                   feature_names: tuple[str, ...] | None = None,
                   point_transform: Callable[[np.ndarray], np.ndarray] | None = None) -> str:
    """Per-iteration attack path as CSV, for external projection/plotting.

    One row per iteration boundary point plus source/init rows (-1/0).
    `point_transform` maps coordinates back to the caller's units when the
    attack ran in a normalized space; distances stay in attack space.
    """
    import csv
    import io

    xform = point_transform or (lambda x: x)
    d = trace.source.shape[0]
    names = list(feature_names) if feature_names else [f"x{i}" for i in range(d)]

    def coords(point: np.ndarray):
        return [repr(float(v)) for v in xform(point)]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["iteration", "role", "distance_to_source", "best_distance",
                     "step_size", "queries_used", *names])
    writer.writerow([-1, "source", 0.0, "", "", 0, *coords(trace.source)])
    init_dist = float(np.linalg.norm(trace.init - trace.source))
    writer.writerow([0, "init", init_dist, init_dist, "", 1, *coords(trace.init)])
    for i, rec in enumerate(trace.iterations, start=1):
        writer.writerow([i, "boundary", rec.distance_to_source, rec.best_distance,
                         rec.step_size, rec.queries_used, *coords(rec.boundary)])
    return buf.getvalue()


def hop_skip_jump(oracle: Callable[[np.ndarray], int],
                  source: np.ndarray,
                  source_class: int,
                  init: np.ndarray,
                  params: HsjaParams,
                  bounds: tuple[np.ndarray, np.ndarray]) -> AttackTrace:
    """Run the attack; `bounds` are per-dimension box limits for projection.

    Precondition: oracle(init) != source_class (verified, costing one
    query). Returns a trace whose success flag requires at least one
    completed boundary search within the query budget.
    """
    source = np.asarray(source, dtype=np.float64)
    init = np.asarray(init, dtype=np.float64)
    lo, hi = (np.asarray(b, dtype=np.float64) for b in bounds)
    d = source.shape[0]
    rng = np.random.Generator(np.random.PCG64(params.seed))
    counted = CountingOracle(oracle, params.query_budget)
    trace = AttackTrace(source=source.copy(), source_class=int(source_class),
                        init=init.copy(), params=params)

    def is_adversarial(x: np.ndarray) -> bool:
        return counted(x) != source_class

    def record_adversarial(x: np.ndarray) -> None:
        trace.adversarial_points.append(x.copy())
        dist = float(np.linalg.norm(x - source))
        if dist < trace.best_distance:
            trace.best_distance = dist
            trace.best_adversarial = x.copy()

    try:
        if not is_adversarial(init):
            trace.queries = counted.queries
            raise PreconditionError("init sample is not adversarial for the oracle")
        record_adversarial(init)
        x_adv = init.copy()

        for t in range(1, params.max_iterations + 1):
            # (a) pin the boundary on the segment x_adv -> source
            alpha_lo, alpha_hi = 0.0, 1.0  # 0 = adversarial end, 1 = source
            while alpha_hi - alpha_lo > params.binary_search_tolerance:
                mid = (alpha_lo + alpha_hi) / 2.0
                point = (1.0 - mid) * x_adv + mid * source
                if is_adversarial(point):
                    alpha_lo = mid
                else:
                    alpha_hi = mid
            boundary = (1.0 - alpha_lo) * x_adv + alpha_lo * source
            record_adversarial(boundary)
            dist = float(np.linalg.norm(boundary - source))

            # (b) Monte Carlo estimate of the boundary-normal direction
            n_probe = params.init_gradient_samples * math.ceil(math.sqrt(t))
            delta = params.binary_search_tolerance * math.sqrt(d) * dist
            probes = rng.standard_normal((n_probe, d))
            probes /= np.linalg.norm(probes, axis=1, keepdims=True)
            signs = np.empty(n_probe)
            for b in range(n_probe):
                candidate = np.clip(boundary + delta * probes[b], lo, hi)
                signs[b] = 1.0 if is_adversarial(candidate) else -1.0
            mean_sign = float(signs.mean())
            if mean_sign == 1.0:
                direction = probes.mean(axis=0)
            elif mean_sign == -1.0:
                direction = -probes.mean(axis=0)
            else:
                direction = ((signs - mean_sign)[:, None] * probes).mean(axis=0)
            norm = float(np.linalg.norm(direction))
            if norm > 0:
                direction = direction / norm

            # (c) geometric step search along the estimated direction
            step = dist / math.sqrt(t)
            stepped = None
            if norm > 0:
                while step > 1e-12:
                    candidate = np.clip(boundary + step * direction, lo, hi)
                    if is_adversarial(candidate):
                        stepped = candidate
                        break
                    step /= 2.0
            if stepped is not None:
                record_adversarial(stepped)
                x_adv = stepped
            else:
                x_adv = boundary

            trace.iterations.append(IterationRecord(
                boundary=boundary.copy(),
                direction=direction.copy(),
                step_size=step,
                distance_to_source=dist,
                best_distance=trace.best_distance,
                queries_used=counted.queries,
            ))
    except _BudgetExhausted:
        pass

    trace.queries = counted.queries
    trace.success = len(trace.iterations) >= 1 and trace.best_adversarial is not None
    return trace
