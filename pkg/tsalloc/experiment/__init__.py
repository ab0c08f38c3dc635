from .config import ALGORITHMS, FORMATS, ConfigError, ExperimentConfig
from .runner import (
    MetricsReport,
    OracleInfeasibleError,
    aggregate,
    algorithm_parameters,
    compute_oracles,
    run_experiment,
    run_trial,
    run_trials,
    trial_columns,
)
from .report import emit_report, read_report, reports_equal

__all__ = [
    "ALGORITHMS",
    "FORMATS",
    "ConfigError",
    "ExperimentConfig",
    "MetricsReport",
    "OracleInfeasibleError",
    "aggregate",
    "algorithm_parameters",
    "compute_oracles",
    "run_experiment",
    "run_trial",
    "run_trials",
    "trial_columns",
    "emit_report",
    "read_report",
    "reports_equal",
]
