from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from tsalloc.dataset.outcome import AllocationOutcome
from tsalloc.estimators.stage import StageParams

COMPLETED = "completed"
FAILED = "failed"

# failure tags
ESTIMATE_INFEASIBLE = "estimate_infeasible"
NONPOSITIVE_ESTIMATE = "nonpositive_estimate"
MARGIN_EXHAUSTED = "margin_exhausted"
FEASIBILITY_ESTIMATE_INFEASIBLE = "feasibility_estimate_infeasible"


@dataclass
class PotentialSegment:
    """Log potentials over the requests ``[start, stop)`` driven by one potential state.

    ``log_potentials`` has one row before the first step and one after each step.
    """

    start: int
    stop: int
    log_potentials: np.ndarray


@dataclass
class StageRecord:
    """One doubling stage of a staged run."""

    r: int
    start: int
    stop: int
    params: StageParams
    estimator_status: str
    realized_revenue: float = np.nan


@dataclass
class RunTrace:
    """Decisions and diagnostics of one online run.

    :param served_range: Requests the algorithm could allocate; the observation
        stage of the staged algorithms is excluded.
    :param failure: Tag of the reason a staged run stopped early, ``None`` otherwise.
    """

    algorithm: str
    outcome: AllocationOutcome
    served_range: Tuple[int, int]
    status: str = COMPLETED
    failure: Optional[str] = None
    diagnostic: str = ""
    stages: List[StageRecord] = field(default_factory=list)
    segments: List[PotentialSegment] = field(default_factory=list)
    xi_used: float = np.nan
    xi_hat: float = np.nan

    @property
    def failed(self) -> bool:
        return self.status == FAILED

    @property
    def decisions(self) -> np.ndarray:
        return self.outcome.decisions
