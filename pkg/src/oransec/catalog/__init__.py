from .loader import (
    CatalogError,
    CatalogParseError,
    CatalogValidationError,
    Violation,
    bundled_catalog_path,
    load_bundled_catalog,
    load_catalog,
    load_ef_overrides,
    validate_catalog,
)
from .model import (
    ActorFeasibility,
    AttackFamily,
    AttackFamilyClass,
    AttackPhase,
    AttackTechnique,
    CAPABILITY_CODES,
    Catalog,
    CapabilityAxis,
    Countermeasure,
    CountermeasureCategory,
    DefenderNeed,
    DeploymentScenario,
    FAMILY_CLASS_FOR_THREAT_MODEL,
    IMPACT_FOR_PROPERTY,
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
    technique_sort_key,
    threat_sort_key,
)
from .queries import (
    UnknownIdError,
    actor_is_feasible,
    capability_implies,
    close_scores_under_dominance,
    feasible_actors,
)
