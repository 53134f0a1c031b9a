from .demo import (
    DEMO_ATTACK_SEED,
    DEMO_DATA_SEED,
    DEMO_FOREST_SEED,
    DEMO_N,
    demo_config,
    demo_dataset,
    demo_holdout_accuracy,
    demo_model,
    demo_params,
    demo_split,
)
from .effectiveness import (
    EffectivenessEstimate,
    EstimateError,
    append_estimate,
    attack_pair_pool,
    estimate_effectiveness,
    run_attack_trial,
    trial_success,
    wilson_interval,
)
from .forest import (
    ForestModel,
    ForestParams,
    holdout_accuracy,
    train_forest,
    train_test_split,
)
from .hopskipjump import (
    AttackTrace,
    CountingOracle,
    HsjaParams,
    PreconditionError,
    hop_skip_jump,
    trace_path_csv,
)
from .kpi import (
    CLASS_NAMES,
    FEATURE_NAMES,
    FEATURE_RANGES,
    GeneratorConfig,
    KpiSample,
    LabelingPolicy,
    PolicyError,
    QoEClass,
    TrafficDataset,
    dataset_from_csv,
    dataset_to_csv,
    denormalize,
    expert_label,
    feature_bounds,
    generate_dataset,
    normalize,
)
from .kernels import USING_NUMBA
