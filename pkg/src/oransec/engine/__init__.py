from .assessment import (
    AssessmentResult,
    DeltaReport,
    EntryDelta,
    ImpactGrade,
    PatchError,
    ProfileError,
    RiskEntry,
    UseCaseProfile,
    apply_patch,
    assess,
    likelihood,
    risk_entry,
    validate_profile,
    what_if,
)
from .questions import (
    Question,
    QuestionError,
    bundled_questions_path,
    capability_scores,
    grade_to_score,
    load_bundled_questions,
    load_questions,
    parse_questions,
)
from .report import format_risk, result_to_csv
