"""Risk computation: likelihood, per-threat risk entries, prioritization,
and what-if deltas for a use-case profile."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum

from ..catalog import (
    Catalog,
    IMPACT_FOR_PROPERTY,
    actor_is_feasible,
    technique_sort_key,
    threat_sort_key,
)
from .questions import Question, capability_scores


class ImpactGrade(Enum):
    NONE = ("None", 0.0)
    LOW = ("Low", 2.5)
    MEDIUM = ("Medium", 5.0)
    HIGH = ("High", 7.5)
    CRITICAL = ("Critical", 10.0)

    def __init__(self, label: str, value: float):
        self.label = label
        self.numeric = value

    @classmethod
    def from_label(cls, label: str) -> "ImpactGrade":
        for grade in cls:
            if grade.label == label:
                return grade
        raise ProfileError(f"unknown impact grade {label!r}")


class ProfileError(ValueError):
    """Profile fails validation; message carries the field path."""


THREAT_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7")


@dataclass(frozen=True)
class UseCaseProfile:
    title: str
    description: str
    scenario: str  # DS id
    actor: str  # A id
    impact_grades: dict[str, ImpactGrade]  # threat id -> grade
    answers: dict[str, str]  # question id -> grade label
    apply_dominance_closure: bool = True

    def to_doc(self) -> dict:
        return {
            "title": self.title,
            "description": self.description,
            "scenario": self.scenario,
            "actor": self.actor,
            "impact_grades": {t: g.label for t, g in self.impact_grades.items()},
            "answers": dict(self.answers),
            "apply_dominance_closure": self.apply_dominance_closure,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "UseCaseProfile":
        return cls(
            title=doc.get("title", ""),
            description=doc.get("description", ""),
            scenario=doc["scenario"],
            actor=doc["actor"],
            impact_grades={t: ImpactGrade.from_label(g)
                           for t, g in doc.get("impact_grades", {}).items()},
            answers=dict(doc.get("answers", {})),
            apply_dominance_closure=bool(doc.get("apply_dominance_closure", True)),
        )


def validate_profile(profile: UseCaseProfile, questions: list[Question],
                     catalog: Catalog) -> None:
    """Raise ProfileError naming the first offending field path."""
    if profile.scenario not in catalog.scenarios:
        raise ProfileError(f"scenario: unknown deployment scenario {profile.scenario!r}")
    if profile.actor not in catalog.actors:
        raise ProfileError(f"actor: unknown threat actor {profile.actor!r}")
    for threat_id in THREAT_IDS:
        if threat_id not in profile.impact_grades:
            raise ProfileError(f"impact_grades.{threat_id}: missing impact grade")
    by_id = {q.id: q for q in questions}
    for qid, grade in profile.answers.items():
        if qid not in by_id:
            raise ProfileError(f"answers.{qid}: unknown question")
        if grade not in by_id[qid].grades():
            raise ProfileError(f"answers.{qid}: grade {grade!r} not on the question's scale")


@dataclass(frozen=True)
class RiskEntry:
    actor: str
    technique: str
    variant_label: str
    threat: str
    likelihood: float
    effectiveness: float
    impact_value: float
    indicator: int
    risk: float
    feasible: bool

    def to_doc(self) -> dict:
        return {
            "actor": self.actor,
            "technique": self.technique,
            "variant_label": self.variant_label,
            "threat": self.threat,
            "likelihood": self.likelihood,
            "effectiveness": self.effectiveness,
            "impact_value": self.impact_value,
            "indicator": self.indicator,
            "risk": self.risk,
            "feasible": self.feasible,
        }


@dataclass(frozen=True)
class AssessmentResult:
    profile: UseCaseProfile
    catalog_version: str
    scores: dict[str, float]  # capability scores used
    entries: tuple[RiskEntry, ...]  # in catalog (document) order
    prioritized: tuple[int, ...]  # permutation of range(len(entries))

    def ranked_entries(self) -> list[RiskEntry]:
        return [self.entries[i] for i in self.prioritized]

    def rank_of(self) -> dict[tuple[str, str], int]:
        """1-based rank per (technique, threat) pair."""
        return {(self.entries[i].technique, self.entries[i].threat): rank
                for rank, i in enumerate(self.prioritized, start=1)}

    def to_doc(self) -> dict:
        return {
            "profile": self.profile.to_doc(),
            "catalog_version": self.catalog_version,
            "scores": dict(self.scores),
            "entries": [e.to_doc() for e in self.entries],
            "prioritized": list(self.prioritized),
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, separators=(",", ":"))


def likelihood(technique, scores: dict[str, float]) -> float:
    """Average of requirement-weighted scores over the required capabilities.

    Techniques with no required capability have likelihood 0.
    """
    required = technique.required_capabilities()
    if not required:
        return 0.0
    total = 0.0
    for cap in required:
        total += technique.req[cap] * scores.get(cap, 0.0)
    return total / len(required)


def risk_entry(technique, threat_id: str, profile: UseCaseProfile,
               scores: dict[str, float], catalog: Catalog) -> RiskEntry:
    """One (actor, technique, threat) risk row. risk = Ef * Imp * indicator * LH."""
    threat = catalog.threats[threat_id]
    indicator = technique.impacts[IMPACT_FOR_PROPERTY[threat.violated_property]]
    lh = likelihood(technique, scores)
    imp = profile.impact_grades[threat_id].numeric
    ef = technique.effectiveness
    return RiskEntry(
        actor=profile.actor,
        technique=technique.id,
        variant_label=technique.variant_label,
        threat=threat_id,
        likelihood=lh,
        effectiveness=ef,
        impact_value=imp,
        indicator=indicator,
        risk=ef * imp * indicator * lh,
        feasible=actor_is_feasible(catalog, profile.actor, technique.id, profile.scenario),
    )


def _prioritize(entries: tuple[RiskEntry, ...]) -> tuple[int, ...]:
    return tuple(sorted(
        range(len(entries)),
        key=lambda i: (-entries[i].risk,
                       technique_sort_key(entries[i].technique),
                       threat_sort_key(entries[i].threat)),
    ))


def assess(profile: UseCaseProfile, questions: list[Question],
           catalog: Catalog) -> AssessmentResult:
    """Full evaluation: scores -> likelihoods -> risk entries -> priority order.

    Emits one entry per (technique, reachable threat) pair whose impact
    indicator is 1, for the profile's selected actor. Deterministic.
    """
    validate_profile(profile, questions, catalog)
    scores = capability_scores(profile.answers, questions, catalog,
                               profile.apply_dominance_closure)
    entries: list[RiskEntry] = []
    for technique in catalog.techniques.values():
        for threat_id in technique.threat_ids(catalog):
            threat = catalog.threats[threat_id]
            if technique.impacts[IMPACT_FOR_PROPERTY[threat.violated_property]] != 1:
                continue
            entries.append(risk_entry(technique, threat_id, profile, scores, catalog))
    entries_t = tuple(entries)
    return AssessmentResult(
        profile=profile,
        catalog_version=catalog.version,
        scores=scores,
        entries=entries_t,
        prioritized=_prioritize(entries_t),
    )


@dataclass(frozen=True)
class EntryDelta:
    technique: str
    threat: str
    old_risk: float
    new_risk: float
    old_rank: int
    new_rank: int

    @property
    def rank_shift(self) -> int:
        return self.old_rank - self.new_rank  # positive = moved up

    def to_doc(self) -> dict:
        return {
            "technique": self.technique,
            "threat": self.threat,
            "old_risk": self.old_risk,
            "new_risk": self.new_risk,
            "old_rank": self.old_rank,
            "new_rank": self.new_rank,
            "rank_shift": self.rank_shift,
        }


@dataclass(frozen=True)
class DeltaReport:
    base: AssessmentResult
    patched: AssessmentResult
    deltas: tuple[EntryDelta, ...]

    def to_doc(self) -> dict:
        return {
            "deltas": [d.to_doc() for d in self.deltas],
            "patched_result": self.patched.to_doc(),
        }


class PatchError(ValueError):
    pass


def apply_patch(profile: UseCaseProfile, patch: dict) -> UseCaseProfile:
    """Pure profile update; unknown patch keys are rejected."""
    allowed = {"title", "description", "scenario", "actor", "impact_grades",
               "answers", "apply_dominance_closure"}
    unknown = set(patch) - allowed
    if unknown:
        raise PatchError(f"unknown patch field(s): {sorted(unknown)}")
    updates: dict = {}
    for key in ("title", "description", "scenario", "actor"):
        if key in patch:
            updates[key] = patch[key]
    if "apply_dominance_closure" in patch:
        updates["apply_dominance_closure"] = bool(patch["apply_dominance_closure"])
    if "impact_grades" in patch:
        grades = dict(profile.impact_grades)
        for threat_id, label in patch["impact_grades"].items():
            grades[threat_id] = ImpactGrade.from_label(label)
        updates["impact_grades"] = grades
    if "answers" in patch:
        answers = dict(profile.answers)
        answers.update(patch["answers"])
        updates["answers"] = answers
    return replace(profile, **updates)


def what_if(base: UseCaseProfile, patch: dict, questions: list[Question],
            catalog: Catalog) -> DeltaReport:
    """Recompute under a patched profile and report per-entry risk/rank moves."""
    before = assess(base, questions, catalog)
    after = assess(apply_patch(base, patch), questions, catalog)
    old_rank = before.rank_of()
    new_rank = after.rank_of()
    old_risk = {(e.technique, e.threat): e.risk for e in before.entries}
    deltas = []
    for entry in after.entries:
        key = (entry.technique, entry.threat)
        deltas.append(EntryDelta(
            technique=entry.technique,
            threat=entry.threat,
            old_risk=old_risk.get(key, 0.0),
            new_risk=entry.risk,
            old_rank=old_rank.get(key, 0),
            new_rank=new_rank[key],
        ))
    return DeltaReport(base=before, patched=after, deltas=tuple(deltas))
