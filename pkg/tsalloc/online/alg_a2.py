import logging

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.outcome import evaluate_outcome
from tsalloc.dataset.stream import RequestStream
from tsalloc.estimators.feasibility import feas_estimator
from tsalloc.online.alg_a1 import run_stages
from tsalloc.online.schedule import A2_RULE, make_stage_schedule
from tsalloc.online.trace import (
    FAILED,
    FEASIBILITY_ESTIMATE_INFEASIBLE,
    MARGIN_EXHAUSTED,
    RunTrace,
)

logger = logging.getLogger(__name__)

ALG_A2 = "algA2"


def run_algA2(
    inst: Instance,
    stream: RequestStream,
    epsilon: float,
    gamma1: float,
    gamma2: float,
    warm_start: bool = False,
    record: bool = False,
) -> RunTrace:
    """Staged potential algorithm that first estimates the measure of feasibility.

    The observation-stage requests feed the feasibility estimator and then the
    first revenue estimate; they are never allocated.
    """
    if gamma1 <= 0 or gamma2 <= 0:
        raise ValueError("gamma1 and gamma2 must be positive, got {} and {}".format(gamma1, gamma2))
    T = len(stream)
    schedule = make_stage_schedule(epsilon, T, A2_RULE)
    estimate = feas_estimator(
        stream.segment(0, schedule.t_init), schedule.t_init, gamma2, schedule.delta, inst
    )

    failure = None
    if not estimate.feasible:
        failure = FEASIBILITY_ESTIMATE_INFEASIBLE
        diagnostic = "feasibility estimate is {}".format(estimate.status.value)
    elif estimate.xi_hat <= epsilon:
        failure = MARGIN_EXHAUSTED
        diagnostic = "feasibility margin exhausted: xi_hat={:.6g} <= epsilon={:.6g}".format(
            estimate.xi_hat, epsilon
        )
    if failure is not None:
        logger.debug("{} run failed: {}".format(ALG_A2, diagnostic))
        return RunTrace(
            algorithm=ALG_A2,
            outcome=evaluate_outcome(inst, stream, np.zeros(T, dtype=np.int64)),
            served_range=(schedule.t_init, T),
            status=FAILED,
            failure=failure,
            diagnostic=diagnostic,
            xi_hat=estimate.xi_hat,
        )

    trace = run_stages(
        inst,
        stream,
        schedule,
        epsilon,
        gamma1,
        estimate.xi_hat,
        algorithm=ALG_A2,
        warm_start=warm_start,
        record=record,
    )
    trace.xi_hat = estimate.xi_hat
    return trace
