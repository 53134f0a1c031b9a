from .recommend import (
    DefenderContext,
    ModelAccess,
    Recommendation,
    RicTarget,
    applicable,
    coverage_matrix,
    permissive_context,
    recommend,
    recommendations_to_csv,
)
