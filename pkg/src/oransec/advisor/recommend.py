"""Countermeasure filtering and ranking for prioritized threats."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..catalog import (
    Catalog,
    Countermeasure,
    FAMILY_CLASS_FOR_THREAT_MODEL,
    MlHost,
    PerformanceFlag,
)
from ..engine import AssessmentResult


class ModelAccess(Enum):
    BLACK_BOX = "BlackBox"
    WHITE_BOX = "WhiteBox"


class RicTarget(Enum):
    NEAR_RT_RIC = "NearRtRic"
    NON_RT_RIC = "NonRtRic"


@dataclass(frozen=True)
class DefenderContext:
    model_access: ModelAccess
    has_training_data: bool
    has_feature_data: bool
    hosts_available: frozenset[MlHost]
    ric_target: RicTarget
    performance_budget: frozenset[PerformanceFlag] = frozenset()

    def __post_init__(self):
        if not self.hosts_available:
            raise ValueError("hosts_available must be non-empty")

    @classmethod
    def from_doc(cls, doc: dict) -> "DefenderContext":
        return cls(
            model_access=ModelAccess(doc.get("model_access", "WhiteBox")),
            has_training_data=bool(doc.get("has_training_data", False)),
            has_feature_data=bool(doc.get("has_feature_data", False)),
            hosts_available=frozenset(MlHost(h) for h in doc.get("hosts_available", [])),
            ric_target=RicTarget(doc.get("ric_target", "NonRtRic")),
            performance_budget=frozenset(
                PerformanceFlag(p) for p in doc.get("performance_budget", [])),
        )


def permissive_context() -> DefenderContext:
    """White-box defender with every host, all data, Non-RT target, full budget."""
    return DefenderContext(
        model_access=ModelAccess.WHITE_BOX,
        has_training_data=True,
        has_feature_data=True,
        hosts_available=frozenset(MlHost),
        ric_target=RicTarget.NON_RT_RIC,
        performance_budget=frozenset(PerformanceFlag),
    )


def applicable(cm: Countermeasure, ctx: DefenderContext) -> tuple[bool, list[str]]:
    """Whether the countermeasure can be deployed in this context, with the
    satisfied/violated constraint facts that decided it."""
    oc = cm.oran_constraints
    reasons: list[str] = []
    ok = True

    if ctx.model_access is ModelAccess.BLACK_BOX and not oc.black_box_ok:
        ok = False
        reasons.append("violated: requires white-box model access")
    else:
        reasons.append("satisfied: model access")

    if oc.needs_training_data and not ctx.has_training_data:
        ok = False
        reasons.append("violated: requires training data the defender lacks")
    else:
        reasons.append("satisfied: training data requirement")

    if oc.needs_feature_data and not ctx.has_feature_data:
        ok = False
        reasons.append("violated: requires feature data the defender lacks")
    else:
        reasons.append("satisfied: feature data requirement")

    host_overlap = oc.hosts & ctx.hosts_available
    if not host_overlap:
        ok = False
        reasons.append("violated: no implementation host available "
                       f"(needs one of {sorted(h.value for h in oc.hosts)})")
    else:
        reasons.append("satisfied: host(s) " + ", ".join(sorted(h.value for h in host_overlap)))

    if ctx.ric_target is RicTarget.NEAR_RT_RIC and not oc.near_rt_ok:
        ok = False
        reasons.append("violated: not applicable at the Near-RT RIC")
    elif ctx.ric_target is RicTarget.NON_RT_RIC and not oc.non_rt_ok:
        ok = False
        reasons.append("violated: not applicable at the Non-RT RIC")
    else:
        reasons.append(f"satisfied: deployable at {ctx.ric_target.value}")

    return ok, reasons


@dataclass(frozen=True)
class Recommendation:
    countermeasure: str  # id
    name: str
    category: str
    matched_threats: frozenset[str]
    score: int  # ordinal rank, 1-based
    violated_budget_flags: frozenset[PerformanceFlag]
    rationale: tuple[str, ...] = field(default_factory=tuple)

    def to_doc(self) -> dict:
        return {
            "countermeasure": self.countermeasure,
            "name": self.name,
            "category": self.category,
            "matched_threats": sorted(self.matched_threats),
            "score": self.score,
            "violated_budget_flags": sorted(f.value for f in self.violated_budget_flags),
            "rationale": list(self.rationale),
        }


def recommend(result: AssessmentResult, ctx: DefenderContext, catalog: Catalog,
              top_n: int = 5) -> list[Recommendation]:
    """Rank countermeasures for the top_n highest-risk entries.

    A candidate must cover the entry's threat, address the technique's
    family class, and pass `applicable`. Ranking: distinct top-risk threats
    covered desc, violated budget flags asc, name asc.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    top_entries = result.ranked_entries()[:top_n]
    # (threat, family class) demands raised by the top entries
    demands: list[tuple[str, str]] = []
    for entry in top_entries:
        technique = catalog.techniques[entry.technique]
        family = catalog.families[technique.family]
        demands.append(
            (entry.threat, FAMILY_CLASS_FOR_THREAT_MODEL[family.threat_model_class].value))

    rows = []
    for cm in catalog.countermeasures.values():
        matched = {
            threat for threat, fam_class in demands
            if threat in cm.threats_covered
            and any(f.value == fam_class for f in cm.families_covered)
        }
        if not matched:
            continue
        ok, reasons = applicable(cm, ctx)
        if not ok:
            continue
        violated_budget = cm.performance_flags - ctx.performance_budget
        rationale = (
            [f"covers top-risk threat(s): {', '.join(sorted(matched))}"]
            + reasons
            + ([f"budget: incurs untolerated {', '.join(sorted(f.value for f in violated_budget))}"]
               if violated_budget else ["budget: within tolerated performance flags"])
        )
        rows.append((cm, matched, violated_budget, rationale))

    rows.sort(key=lambda row: (-len(row[1]), len(row[2]), row[0].name))
    return [
        Recommendation(
            countermeasure=cm.id,
            name=cm.name,
            category=cm.category.value,
            matched_threats=frozenset(matched),
            score=rank,
            violated_budget_flags=frozenset(violated),
            rationale=tuple(rationale),
        )
        for rank, (cm, matched, violated, rationale) in enumerate(rows, start=1)
    ]


def coverage_matrix(catalog: Catalog) -> dict[str, dict[str, bool]]:
    """threat id -> countermeasure name -> covered, in deterministic order."""
    threats = sorted(catalog.threats, key=lambda t: int(t.lstrip("T")))
    return {
        threat: {cm.name: threat in cm.threats_covered
                 for cm in catalog.countermeasures.values()}
        for threat in threats
    }


def recommendations_to_csv(recommendations: list[Recommendation]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "countermeasure", "category", "covered_threats",
                     "violated_budget_flags", "rationale"])
    for rec in recommendations:
        writer.writerow([
            rec.score,
            rec.name,
            rec.category,
            "|".join(sorted(rec.matched_threats)),
            "|".join(sorted(f.value for f in rec.violated_budget_flags)),
            "; ".join(rec.rationale),
        ])
    return buf.getvalue()
