"""Structural queries over a loaded catalog."""

from __future__ import annotations

from .model import Catalog, MlHost, RicLocation


class UnknownIdError(KeyError):
    """Raised when a query names a capability/technique/scenario the catalog lacks."""


def capability_implies(catalog: Catalog, stronger: str, weaker: str) -> bool:
    """True iff owning `stronger` also grants `weaker` (reflexive)."""
    for cap in (stronger, weaker):
        if cap not in catalog.capabilities:
            raise UnknownIdError(f"unknown capability id {cap!r}")
    return (stronger, weaker) in catalog.dominance


def close_scores_under_dominance(catalog: Catalog,
                                 scores: dict[str, float]) -> dict[str, float]:
    """Least pointwise-larger score map consistent with the capability order.

    A capability is at least as obtainable as any capability that dominates
    it, so each score is raised to the max over its dominators. Idempotent
    and monotone in the input.
    """
    for cap, value in scores.items():
        if cap not in catalog.capabilities:
            raise UnknownIdError(f"unknown capability id {cap!r}")
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"score for {cap} out of [0,1]: {value}")
    closed = {cap: scores.get(cap, 0.0) for cap in catalog.capabilities}
    for stronger, weaker in catalog.dominance:
        if closed[weaker] < closed[stronger]:
            closed[weaker] = closed[stronger]
    # dominance is already transitive, so one pass over its pairs suffices
    return closed


def feasible_actors(catalog: Catalog, technique_id: str,
                    scenario_id: str) -> set[tuple[str, str]]:
    """Actors able to execute a technique under a deployment scenario.

    Returns (actor id, placement descriptor) pairs. A1 placements are ML
    hosts, A2 placements are RIC locations filtered by the scenario,
    A3..A6 are scenario-independent ("All").
    """
    if technique_id not in catalog.techniques:
        raise UnknownIdError(f"unknown technique id {technique_id!r}")
    if scenario_id not in catalog.scenarios:
        raise UnknownIdError(f"unknown scenario id {scenario_id!r}")
    feas = catalog.techniques[technique_id].feasibility
    result: set[tuple[str, str]] = set()
    for host in MlHost:
        if feas.a1.get(host, False):
            result.add(("A1", host.value))
    for loc in RicLocation:
        if feas.a2.get((loc, scenario_id), False):
            result.add(("A2", loc.value))
    for actor_id, flag in (("A3", feas.a3), ("A4", feas.a4), ("A5", feas.a5), ("A6", feas.a6)):
        if flag:
            result.add((actor_id, "All"))
    return result


def actor_is_feasible(catalog: Catalog, actor_id: str, technique_id: str,
                      scenario_id: str) -> bool:
    return any(a == actor_id for a, _ in feasible_actors(catalog, technique_id, scenario_id))
