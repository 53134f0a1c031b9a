"""Domain types for the threat knowledge base.

The catalog is immutable after load: every container here is a frozen
dataclass or a plain dict/tuple that nothing mutates. Structural queries
(dominance, feasibility) live in `oransec.catalog.queries`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class CapabilityAxis(Enum):
    DATA_KNOWLEDGE = "DataKnowledge"
    MODEL_KNOWLEDGE = "ModelKnowledge"
    DATA_ACCESS = "DataAccess"
    MODEL_ACCESS = "ModelAccess"


#: The 16 capability codes, grouped by axis. "AKM-Full" is the full-model
#: knowledge column, distinct from hyperparameter/algorithm/task knowledge.
CAPABILITY_AXES: dict[str, CapabilityAxis] = {
    "AKD1": CapabilityAxis.DATA_KNOWLEDGE,
    "AKD2": CapabilityAxis.DATA_KNOWLEDGE,
    "AKD3": CapabilityAxis.DATA_KNOWLEDGE,
    "AKD4": CapabilityAxis.DATA_KNOWLEDGE,
    "AKM-Full": CapabilityAxis.MODEL_KNOWLEDGE,
    "AKM1": CapabilityAxis.MODEL_KNOWLEDGE,
    "AKM2": CapabilityAxis.MODEL_KNOWLEDGE,
    "AKM3": CapabilityAxis.MODEL_KNOWLEDGE,
    "ACD1": CapabilityAxis.DATA_ACCESS,
    "ACD2": CapabilityAxis.DATA_ACCESS,
    "ACD3": CapabilityAxis.DATA_ACCESS,
    "ACD4": CapabilityAxis.DATA_ACCESS,
    "ACD5": CapabilityAxis.DATA_ACCESS,
    "ACD6": CapabilityAxis.DATA_ACCESS,
    "ACM1": CapabilityAxis.MODEL_ACCESS,
    "ACM2": CapabilityAxis.MODEL_ACCESS,
}

CAPABILITY_CODES: tuple[str, ...] = tuple(CAPABILITY_AXES)

KNOWLEDGE_AXES = (CapabilityAxis.DATA_KNOWLEDGE, CapabilityAxis.MODEL_KNOWLEDGE)
ACCESS_AXES = (CapabilityAxis.DATA_ACCESS, CapabilityAxis.MODEL_ACCESS)


class ViolatedProperty(Enum):
    INTEGRITY = "Integrity"
    AVAILABILITY = "Availability"
    PRIVACY = "Privacy"


class ImpactKind(Enum):
    TAMPERING = "Tampering"
    DENIAL_OF_SERVICE = "DenialOfService"
    INFORMATION_DISCLOSURE = "InformationDisclosure"


#: Which impact kind realizes a threat whose given property is violated.
IMPACT_FOR_PROPERTY: dict[ViolatedProperty, ImpactKind] = {
    ViolatedProperty.INTEGRITY: ImpactKind.TAMPERING,
    ViolatedProperty.AVAILABILITY: ImpactKind.DENIAL_OF_SERVICE,
    ViolatedProperty.PRIVACY: ImpactKind.INFORMATION_DISCLOSURE,
}


class ThreatModelClass(Enum):
    WHITE_BOX = "WhiteBox"
    INTERACTIVE_BLACK_BOX = "InteractiveBlackBox"
    COMPLETE_BLACK_BOX = "CompleteBlackBox"


class AttackPhase(Enum):
    TRAINING = "Training"
    INFERENCE = "Inference"


class MlHost(Enum):
    DATA_COLLECTION = "DataCollection"
    DATA_HOST = "DataHost"
    TRAINING_HOST = "TrainingHost"
    SERVING_HOST = "ServingHost"
    ML_APP = "MlApp"


class RicLocation(Enum):
    NON_RT_RIC = "NonRtRic"
    NEAR_RT_RIC = "NearRtRic"
    O_CU_ODU = "OCuOdu"


class LatencyClass(Enum):
    HIGH = "High"
    LOW = "Low"
    ULTRA_LOW = "UltraLow"


class LearningMode(Enum):
    OFFLINE = "Offline"
    ONLINE = "Online"
    ANY = "Any"


class CountermeasureCategory(Enum):
    DATA_PREPROCESSING = "DataPreprocessing"
    ROBUSTNESS_ENHANCEMENT = "RobustnessEnhancement"
    PRIVACY_PRESERVING = "PrivacyPreserving"
    AUXILIARY_MODEL = "AuxiliaryModel"


class AttackFamilyClass(Enum):
    """P2 labels: the craft-method classes a countermeasure addresses."""

    GRADIENT_BASED = "GradientBased"
    TRANSFERABILITY_BASED = "TransferabilityBased"
    QUERY_BASED = "QueryBased"


#: threat_model_class -> P2 family label, for countermeasure matching.
FAMILY_CLASS_FOR_THREAT_MODEL: dict[ThreatModelClass, AttackFamilyClass] = {
    ThreatModelClass.WHITE_BOX: AttackFamilyClass.GRADIENT_BASED,
    ThreatModelClass.INTERACTIVE_BLACK_BOX: AttackFamilyClass.QUERY_BASED,
    ThreatModelClass.COMPLETE_BLACK_BOX: AttackFamilyClass.TRANSFERABILITY_BASED,
}


class SecurityType(Enum):
    PREVENTION = "Prevention"
    ROBUSTNESS = "Robustness"
    DETECTION = "Detection"


class DefenderNeed(Enum):
    ANALYZE_INPUTS = "AnalyzeInputs"
    MODIFY_INPUTS = "ModifyInputs"
    ANALYZE_OUTPUTS = "AnalyzeOutputs"
    MODIFY_OUTPUTS = "ModifyOutputs"
    MODIFY_TRAINING = "ModifyTraining"
    MODIFY_ARCHITECTURE = "ModifyArchitecture"


class PerformanceFlag(Enum):
    ACCURACY_DECREASE = "AccuracyDecrease"
    RUNTIME_OVERHEAD_INFERENCE = "RuntimeOverheadInference"
    RUNTIME_OVERHEAD_TRAINING = "RuntimeOverheadTraining"
    MEMORY_OVERHEAD = "MemoryOverhead"


@dataclass(frozen=True)
class ThreatActor:
    id: str  # A1..A6
    label: str
    description: str = ""


@dataclass(frozen=True)
class ThreatCategory:
    id: str  # T1..T7
    label: str
    violated_property: ViolatedProperty


@dataclass(frozen=True)
class AttackFamily:
    id: str  # AF1..AF13
    label: str
    threat_category: str  # ThreatCategory id
    threat_model_class: ThreatModelClass
    phase: AttackPhase


@dataclass(frozen=True)
class ActorFeasibility:
    """Which actors can obtain a technique's required capabilities.

    a1 is keyed by the compromised ML host; a2 by (RIC location, deployment
    scenario id); a3..a6 are scenario-independent.
    """

    a1: dict[MlHost, bool]
    a2: dict[tuple[RicLocation, str], bool]
    a3: bool
    a4: bool
    a5: bool
    a6: bool


@dataclass(frozen=True)
class AttackTechnique:
    id: str  # e.g. AT4.1
    family: str  # AttackFamily id
    variant_label: str
    req: dict[str, float]  # capability code -> requirement in [0,1], complete over all 16
    impacts: dict[ImpactKind, int]  # indicator 0/1
    effectiveness: float
    feasibility: ActorFeasibility
    extra_threats: tuple[str, ...] = ()  # threats beyond the family's category

    def threat_ids(self, catalog: "Catalog") -> tuple[str, ...]:
        """All threat categories this technique can materialize."""
        base = catalog.families[self.family].threat_category
        return (base, *self.extra_threats)

    def required_capabilities(self) -> list[str]:
        return [c for c in CAPABILITY_CODES if self.req.get(c, 0.0) > 0.0]


@dataclass(frozen=True)
class DeploymentScenario:
    id: str  # DS1..DS5
    latency_class: LatencyClass
    learning_mode: LearningMode
    placements: dict[MlHost, RicLocation]


@dataclass(frozen=True)
class OranConstraints:
    black_box_ok: bool
    white_box_only: bool
    needs_training_data: bool
    needs_feature_data: bool
    hosts: frozenset[MlHost]
    near_rt_ok: bool
    non_rt_ok: bool


@dataclass(frozen=True)
class Countermeasure:
    id: str
    name: str
    category: CountermeasureCategory
    threats_covered: frozenset[str]  # ThreatCategory ids (P1)
    families_covered: frozenset[AttackFamilyClass]  # P2
    security_type: frozenset[SecurityType]  # P3
    defender_needs: frozenset[DefenderNeed]  # P4
    phases: frozenset[AttackPhase]  # P5
    performance_flags: frozenset[PerformanceFlag]  # P6
    oran_constraints: OranConstraints
    architecture_row_unverified: bool = True  # P4 architecture row is blank in the source


@dataclass(frozen=True)
class Catalog:
    version: str
    capabilities: dict[str, CapabilityAxis]
    order_edges: frozenset[tuple[str, str]]  # (stronger, weaker)
    actors: dict[str, ThreatActor]
    threats: dict[str, ThreatCategory]
    families: dict[str, AttackFamily]
    techniques: dict[str, AttackTechnique]
    countermeasures: dict[str, Countermeasure]
    scenarios: dict[str, DeploymentScenario]
    provenance: str = ""
    # transitive closure of order_edges, including reflexive pairs; built by the loader
    dominance: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def technique_order(self) -> list[str]:
        """Technique ids in catalog (document) order."""
        return list(self.techniques)


def technique_sort_key(technique_id: str) -> tuple[int, int]:
    """Numeric-aware ordering for ATx.y ids (AT1.10 sorts after AT1.9)."""
    body = technique_id[2:] if technique_id.startswith("AT") else technique_id
    fam, _, row = body.partition(".")
    try:
        return (int(fam), int(row or 0))
    except ValueError:
        return (1_000_000, 0)


def threat_sort_key(threat_id: str) -> int:
    try:
        return int(threat_id.lstrip("T"))
    except ValueError:
        return 1_000_000
