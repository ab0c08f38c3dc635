from .objective import ObjectiveEstimate, objective_estimator
from .feasibility import FeasibilityEstimate, feas_estimator, feasibility_error
from .stage import (
    FeasibilityMarginError,
    StageParams,
    constraint_error,
    revenue_error,
    stage_params,
    union_log_term,
)

__all__ = [
    "ObjectiveEstimate",
    "objective_estimator",
    "FeasibilityEstimate",
    "feas_estimator",
    "feasibility_error",
    "FeasibilityMarginError",
    "StageParams",
    "constraint_error",
    "revenue_error",
    "stage_params",
    "union_log_term",
]
