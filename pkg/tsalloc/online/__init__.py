from .schedule import A1_RULE, A2_RULE, StageSchedule, make_stage_schedule
from .potentials import PotentialState, potential_increments
from .trace import PotentialSegment, RunTrace, StageRecord
from .ptilde import PTILDE, route, routing_probabilities, run_ptilde
from .alg_a import ALG_A, alg_a_rates, alg_a_state, run_algA
from .alg_a1 import ALG_A1, run_algA1, run_stages, stage_state
from .alg_a2 import ALG_A2, run_algA2

__all__ = [
    "A1_RULE",
    "A2_RULE",
    "StageSchedule",
    "make_stage_schedule",
    "PotentialState",
    "potential_increments",
    "PotentialSegment",
    "RunTrace",
    "StageRecord",
    "PTILDE",
    "route",
    "routing_probabilities",
    "run_ptilde",
    "ALG_A",
    "alg_a_rates",
    "alg_a_state",
    "run_algA",
    "ALG_A1",
    "run_algA1",
    "run_stages",
    "stage_state",
    "ALG_A2",
    "run_algA2",
]
