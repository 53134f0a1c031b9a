"""Parsing and validation of catalog documents.

`load_catalog` turns a JSON document (path, file object, string or dict)
into an immutable `Catalog`, raising on parse or validation failure.
`validate_catalog` reports invariant violations as data, one per path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, IO

from .model import (
    ACCESS_AXES,
    CAPABILITY_AXES,
    CAPABILITY_CODES,
    KNOWLEDGE_AXES,
    ActorFeasibility,
    AttackFamily,
    AttackFamilyClass,
    AttackPhase,
    AttackTechnique,
    Catalog,
    CapabilityAxis,
    Countermeasure,
    CountermeasureCategory,
    DefenderNeed,
    DeploymentScenario,
    ImpactKind,
    LatencyClass,
    LearningMode,
    MlHost,
    OranConstraints,
    PerformanceFlag,
    RicLocation,
    SecurityType,
    ThreatActor,
    ThreatCategory,
    ThreatModelClass,
    ViolatedProperty,
)

ACTOR_IDS = ("A1", "A2", "A3", "A4", "A5", "A6")
THREAT_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7")
SCENARIO_IDS = ("DS1", "DS2", "DS3", "DS4", "DS5")


class CatalogError(Exception):
    """Base error for catalog loading."""


class CatalogParseError(CatalogError):
    """Document is not a well-formed catalog document."""


class CatalogValidationError(CatalogError):
    """Document parsed but violates catalog invariants."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        lines = "; ".join(f"{v.path}: {v.message}" for v in violations[:8])
        more = "" if len(violations) <= 8 else f" (+{len(violations) - 8} more)"
        super().__init__(f"{len(violations)} catalog violation(s): {lines}{more}")


@dataclass(frozen=True)
class Violation:
    path: str  # machine-readable location, e.g. "techniques[AT9.9].family"
    message: str


def _enum(cls, value, path, errors):
    try:
        return cls(value)
    except ValueError:
        errors.append(f"{path}: {value!r} is not a valid {cls.__name__}")
        return None


def _parse_feasibility(raw: dict, path: str, errors: list[str]) -> ActorFeasibility:
    a1 = {}
    for host in MlHost:
        a1[host] = bool(raw.get("a1", {}).get(host.value, False))
    a2 = {}
    for loc in RicLocation:
        per = raw.get("a2", {}).get(loc.value, {})
        for ds in SCENARIO_IDS:
            a2[(loc, ds)] = bool(per.get(ds, False))
    extra_hosts = set(raw.get("a1", {})) - {h.value for h in MlHost}
    if extra_hosts:
        errors.append(f"{path}.a1: unknown host(s) {sorted(extra_hosts)}")
    return ActorFeasibility(
        a1=a1, a2=a2,
        a3=bool(raw.get("a3", False)), a4=bool(raw.get("a4", False)),
        a5=bool(raw.get("a5", False)), a6=bool(raw.get("a6", False)),
    )


def _parse(doc: dict) -> Catalog:
    errors: list[str] = []
    if not isinstance(doc, dict):
        raise CatalogParseError("catalog document must be a JSON object")
    for key in ("version", "capabilities", "order_edges", "actors", "threats",
                "families", "techniques", "countermeasures", "scenarios"):
        if key not in doc:
            raise CatalogParseError(f"missing top-level field {key!r}")

    capabilities: dict[str, CapabilityAxis] = {}
    for i, raw in enumerate(doc["capabilities"]):
        axis = _enum(CapabilityAxis, raw.get("axis"), f"capabilities[{i}].axis", errors)
        if axis is not None:
            capabilities[raw["code"]] = axis

    order_edges = frozenset((s, w) for s, w in doc["order_edges"])

    actors = {
        raw["id"]: ThreatActor(raw["id"], raw.get("label", raw["id"]), raw.get("description", ""))
        for raw in doc["actors"]
    }

    threats = {}
    for raw in doc["threats"]:
        prop = _enum(ViolatedProperty, raw.get("violated_property"),
                     f"threats[{raw.get('id')}].violated_property", errors)
        if prop is not None:
            threats[raw["id"]] = ThreatCategory(raw["id"], raw.get("label", raw["id"]), prop)

    families = {}
    for raw in doc["families"]:
        tmc = _enum(ThreatModelClass, raw.get("threat_model_class"),
                    f"families[{raw.get('id')}].threat_model_class", errors)
        phase = _enum(AttackPhase, raw.get("phase"), f"families[{raw.get('id')}].phase", errors)
        if tmc is not None and phase is not None:
            families[raw["id"]] = AttackFamily(
                raw["id"], raw.get("label", raw["id"]), raw["threat_category"], tmc, phase)

    techniques = {}
    for raw in doc["techniques"]:
        tid = raw["id"]
        path = f"techniques[{tid}]"
        req = {code: 0.0 for code in CAPABILITY_CODES}
        for code, value in raw.get("req", {}).items():
            if code not in CAPABILITY_AXES:
                errors.append(f"{path}.req: unknown capability {code!r}")
                continue
            req[code] = float(value)
        impacts = {kind: 0 for kind in ImpactKind}
        for name in raw.get("impacts", []):
            kind = _enum(ImpactKind, name, f"{path}.impacts", errors)
            if kind is not None:
                impacts[kind] = 1
        techniques[tid] = AttackTechnique(
            id=tid,
            family=raw["family"],
            variant_label=raw.get("variant_label", ""),
            req=req,
            impacts=impacts,
            effectiveness=float(raw.get("effectiveness", 0.0)),
            feasibility=_parse_feasibility(raw.get("feasibility", {}), path, errors),
            extra_threats=tuple(raw.get("extra_threats", [])),
        )

    countermeasures = {}
    for raw in doc["countermeasures"]:
        cid = raw["id"]
        path = f"countermeasures[{cid}]"
        cat = _enum(CountermeasureCategory, raw.get("category"), f"{path}.category", errors)
        oc_raw = raw.get("oran_constraints", {})
        hosts = set()
        for h in oc_raw.get("hosts", []):
            host = _enum(MlHost, h, f"{path}.oran_constraints.hosts", errors)
            if host is not None:
                hosts.add(host)
        oc = OranConstraints(
            black_box_ok=bool(oc_raw.get("black_box_ok", False)),
            white_box_only=bool(oc_raw.get("white_box_only", False)),
            needs_training_data=bool(oc_raw.get("needs_training_data", False)),
            needs_feature_data=bool(oc_raw.get("needs_feature_data", False)),
            hosts=frozenset(hosts),
            near_rt_ok=bool(oc_raw.get("near_rt_ok", False)),
            non_rt_ok=bool(oc_raw.get("non_rt_ok", False)),
        )
        if cat is None:
            continue
        countermeasures[cid] = Countermeasure(
            id=cid,
            name=raw.get("name", cid),
            category=cat,
            threats_covered=frozenset(raw.get("threats_covered", [])),
            families_covered=frozenset(
                f for f in (_enum(AttackFamilyClass, x, f"{path}.families_covered", errors)
                            for x in raw.get("families_covered", [])) if f is not None),
            security_type=frozenset(
                s for s in (_enum(SecurityType, x, f"{path}.security_type", errors)
                            for x in raw.get("security_type", [])) if s is not None),
            defender_needs=frozenset(
                d for d in (_enum(DefenderNeed, x, f"{path}.defender_needs", errors)
                            for x in raw.get("defender_needs", [])) if d is not None),
            phases=frozenset(
                p for p in (_enum(AttackPhase, x, f"{path}.phases", errors)
                            for x in raw.get("phases", [])) if p is not None),
            performance_flags=frozenset(
                p for p in (_enum(PerformanceFlag, x, f"{path}.performance_flags", errors)
                            for x in raw.get("performance_flags", [])) if p is not None),
            oran_constraints=oc,
            architecture_row_unverified=bool(raw.get("architecture_row_unverified", True)),
        )

    scenarios = {}
    for raw in doc["scenarios"]:
        sid = raw["id"]
        lc = _enum(LatencyClass, raw.get("latency_class"), f"scenarios[{sid}].latency_class", errors)
        lm = _enum(LearningMode, raw.get("learning_mode"), f"scenarios[{sid}].learning_mode", errors)
        placements = {}
        for comp, loc in raw.get("placements", {}).items():
            host = _enum(MlHost, comp, f"scenarios[{sid}].placements", errors)
            ric = _enum(RicLocation, loc, f"scenarios[{sid}].placements.{comp}", errors)
            if host is not None and ric is not None:
                placements[host] = ric
        if lc is not None and lm is not None:
            scenarios[sid] = DeploymentScenario(sid, lc, lm, placements)

    if errors:
        raise CatalogParseError("; ".join(errors[:10]))

    return Catalog(
        version=str(doc["version"]),
        capabilities=capabilities,
        order_edges=order_edges,
        actors=actors,
        threats=threats,
        families=families,
        techniques=techniques,
        countermeasures=countermeasures,
        scenarios=scenarios,
        provenance=str(doc.get("provenance", "")),
        dominance=_transitive_closure(order_edges, capabilities),
    )


def _transitive_closure(edges: frozenset[tuple[str, str]],
                        capabilities: dict[str, CapabilityAxis]) -> frozenset[tuple[str, str]]:
    """Reflexive-transitive closure over the known capability codes."""
    reach: dict[str, set[str]] = {c: {c} for c in capabilities}
    adj: dict[str, set[str]] = {c: set() for c in capabilities}
    for s, w in edges:
        if s in adj and w in reach:
            adj[s].add(w)
    changed = True
    while changed:
        changed = False
        for s in adj:
            for w in adj[s]:
                new = reach[w] - reach[s]
                if new:
                    reach[s] |= new
                    changed = True
    return frozenset((s, w) for s, targets in reach.items() for w in targets)


def validate_catalog(catalog: Catalog) -> list[Violation]:
    """Check every catalog invariant; returns [] iff the catalog is sound."""
    out: list[Violation] = []

    def bad(path: str, message: str) -> None:
        out.append(Violation(path, message))

    # capabilities: exactly the 16 known codes with the declared axis split
    if set(catalog.capabilities) != set(CAPABILITY_CODES):
        bad("capabilities", f"expected the 16 codes {sorted(CAPABILITY_CODES)}, "
                            f"got {sorted(catalog.capabilities)}")
    else:
        for code, axis in CAPABILITY_AXES.items():
            if catalog.capabilities[code] != axis:
                bad(f"capabilities[{code}].axis", f"expected {axis.value}")

    # order edges: known endpoints, axis-local, strict partial order
    for s, w in sorted(catalog.order_edges):
        if s not in catalog.capabilities or w not in catalog.capabilities:
            bad(f"order_edges[{s}>{w}]", "unknown capability id")
            continue
        sa, wa = catalog.capabilities[s], catalog.capabilities[w]
        if (sa in KNOWLEDGE_AXES) != (wa in KNOWLEDGE_AXES):
            bad(f"order_edges[{s}>{w}]", "edge crosses between knowledge and access axes")
    closure = catalog.dominance
    for s, w in sorted(closure):
        if s != w and (w, s) in closure:
            bad(f"order[{s}~{w}]", "order not antisymmetric (cycle through both ids)")
            break

    # actors / threats
    if set(catalog.actors) != set(ACTOR_IDS):
        bad("actors", f"expected exactly {list(ACTOR_IDS)}")
    if set(catalog.threats) != set(THREAT_IDS):
        bad("threats", f"expected exactly {list(THREAT_IDS)}")
    t1 = catalog.threats.get("T1")
    if t1 is not None and t1.violated_property is not ViolatedProperty.INTEGRITY:
        bad("threats[T1].violated_property", "T1 must map to Integrity")

    # families
    for fid, fam in catalog.families.items():
        if fam.threat_category not in catalog.threats:
            bad(f"families[{fid}].threat_category", f"unknown threat {fam.threat_category!r}")

    # techniques
    for tid, tech in catalog.techniques.items():
        path = f"techniques[{tid}]"
        if tech.family not in catalog.families:
            bad(f"{path}.family", f"unknown family {tech.family!r}")
        if set(tech.req) != set(CAPABILITY_CODES):
            bad(f"{path}.req", "requirement vector must cover all 16 capabilities")
        for code, value in tech.req.items():
            if not (0.0 <= value <= 1.0):
                bad(f"{path}.req.{code}", f"requirement {value} out of [0,1]")
        if not (0.0 <= tech.effectiveness <= 1.0):
            bad(f"{path}.effectiveness", f"effectiveness {tech.effectiveness} out of [0,1]")
        if not any(tech.impacts.values()):
            bad(f"{path}.impacts", "at least one impact indicator must be 1")
        if len(tech.feasibility.a1) != 5:
            bad(f"{path}.feasibility.a1", "must have exactly 5 host entries")
        if len(tech.feasibility.a2) != 15:
            bad(f"{path}.feasibility.a2", "must have exactly 15 (location, scenario) entries")
        for extra in tech.extra_threats:
            if extra not in catalog.threats:
                bad(f"{path}.extra_threats", f"unknown threat {extra!r}")

    # countermeasures
    for cid, cm in catalog.countermeasures.items():
        path = f"countermeasures[{cid}]"
        for t in sorted(cm.threats_covered):
            if t not in catalog.threats:
                bad(f"{path}.threats_covered", f"unknown threat {t!r}")
        if not cm.oran_constraints.hosts:
            bad(f"{path}.oran_constraints.hosts", "countermeasure must name at least one host")
        if not cm.oran_constraints.non_rt_ok:
            bad(f"{path}.oran_constraints.non_rt_ok",
                "every countermeasure is applicable at the Non-RT RIC")

    # scenarios
    if set(catalog.scenarios) != set(SCENARIO_IDS):
        bad("scenarios", f"expected exactly {list(SCENARIO_IDS)}")
    for sid, sc in catalog.scenarios.items():
        if set(sc.placements) != set(MlHost):
            bad(f"scenarios[{sid}].placements", "must place all five ML components")

    return out


def load_catalog(document: str | Path | IO[str] | dict[str, Any],
                 ef_overrides: dict[str, float] | None = None) -> Catalog:
    """Parse and validate a catalog document.

    `document` may be a path, an open file, a JSON string, or an
    already-decoded dict. `ef_overrides` replaces technique effectiveness
    scores (e.g. from the attack lab's estimates file) before validation.
    """
    if isinstance(document, dict):
        doc = document
    else:
        if isinstance(document, Path):
            text = document.read_text()
        elif isinstance(document, str):
            p = Path(document)
            text = p.read_text() if (len(document) < 4096 and p.is_file()) else document
        else:
            text = document.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CatalogParseError(f"not valid JSON: {exc}") from exc

    catalog = _parse(doc)
    if ef_overrides:
        techniques = dict(catalog.techniques)
        for tid, ef in ef_overrides.items():
            if tid in techniques:
                t = techniques[tid]
                techniques[tid] = AttackTechnique(
                    id=t.id, family=t.family, variant_label=t.variant_label, req=t.req,
                    impacts=t.impacts, effectiveness=float(ef), feasibility=t.feasibility,
                    extra_threats=t.extra_threats)
        catalog = Catalog(
            version=catalog.version, capabilities=catalog.capabilities,
            order_edges=catalog.order_edges, actors=catalog.actors,
            threats=catalog.threats, families=catalog.families, techniques=techniques,
            countermeasures=catalog.countermeasures, scenarios=catalog.scenarios,
            provenance=catalog.provenance, dominance=catalog.dominance)

    violations = validate_catalog(catalog)
    if violations:
        raise CatalogValidationError(violations)
    return catalog


def bundled_catalog_path() -> Path:
    return Path(str(resources.files("oransec").joinpath("data/catalog.json")))


def load_bundled_catalog(ef_overrides: dict[str, float] | None = None) -> Catalog:
    return load_catalog(bundled_catalog_path(), ef_overrides=ef_overrides)


def load_ef_overrides(path: str | Path) -> dict[str, float]:
    """Read an estimates file and keep the latest entry per technique id."""
    entries = json.loads(Path(path).read_text())
    overrides: dict[str, float] = {}
    for entry in entries:
        overrides[entry["technique_id"]] = float(entry["success_rate"])
    return overrides
