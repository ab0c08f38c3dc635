from .expected import (
    ExpectedSolution,
    FeasibilityMeasure,
    StrongFeasibilityError,
    allocation_policy,
    allocation_problem,
    feasibility_cap,
    measure_of_feasibility,
    solve_expected,
    tau_of,
)
from .factor import SensitivityCheck, factor_revealing_problem, factor_revealing_t, sensitivity_check
from .gammas import GammaReport, compute_gammas, regime_threshold, tau1_of
from .ilp import (
    ENUMERATION_BUDGET,
    EnumerationBudgetError,
    ExpectationBoundCheck,
    IlpOptimum,
    check_expectation_bound,
    offline_ilp_opt,
    offline_ilp_solve,
    per_request_instance,
    sampled_relaxation,
)

__all__ = [
    "ExpectedSolution",
    "FeasibilityMeasure",
    "StrongFeasibilityError",
    "allocation_policy",
    "allocation_problem",
    "feasibility_cap",
    "measure_of_feasibility",
    "solve_expected",
    "tau_of",
    "SensitivityCheck",
    "factor_revealing_problem",
    "factor_revealing_t",
    "sensitivity_check",
    "GammaReport",
    "compute_gammas",
    "regime_threshold",
    "tau1_of",
    "ENUMERATION_BUDGET",
    "EnumerationBudgetError",
    "ExpectationBoundCheck",
    "IlpOptimum",
    "check_expectation_bound",
    "offline_ilp_opt",
    "offline_ilp_solve",
    "per_request_instance",
    "sampled_relaxation",
]
