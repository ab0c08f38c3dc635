import logging
import math

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.outcome import evaluate_outcome
from tsalloc.dataset.stream import RequestStream
from tsalloc.estimators.objective import objective_estimator
from tsalloc.estimators.stage import FeasibilityMarginError, StageParams, stage_params
from tsalloc.online.potentials import PotentialState
from tsalloc.online.schedule import A1_RULE, StageSchedule, make_stage_schedule
from tsalloc.online.trace import (
    COMPLETED,
    ESTIMATE_INFEASIBLE,
    FAILED,
    NONPOSITIVE_ESTIMATE,
    PotentialSegment,
    RunTrace,
    StageRecord,
)

logger = logging.getLogger(__name__)

ALG_A1 = "algA1"

ESTIMATED = "estimated"
WARM = "warm"


def stage_state(inst: Instance, params: StageParams, record: bool = False) -> PotentialState:
    return PotentialState.from_targets(
        inst,
        c1k=params.c1k,
        c2=params.c2,
        upper_target=params.upper_target,
        lower_target=params.lower_target,
        revenue_target=params.revenue_target,
        drift_x=params.drift_x,
        drift_y=params.drift_y,
        init_log_phi=params.init_log_phi,
        init_log_psi=params.init_log_psi,
        record=record,
    )


def run_stages(
    inst: Instance,
    stream: RequestStream,
    schedule: StageSchedule,
    epsilon: float,
    gamma1: float,
    xi: float,
    algorithm: str = ALG_A1,
    warm_start: bool = False,
    record: bool = False,
) -> RunTrace:
    """Runs the doubling stages ``0 .. l-1`` after the observation stage.

    Stage ``r`` estimates the lifted revenue from the requests of stage ``r - 1``
    (the observation stage for ``r = 0``), derives its parameters and allocates
    its own requests greedily with fresh potentials. An infeasible or
    non-positive estimate stops the run: later requests stay unserved and the
    trace is tagged as failed.
    """
    T = len(stream)
    types = stream.types
    decisions = np.zeros(T, dtype=np.int64)
    stages, segments = [], []
    status, failure, diagnostic = COMPLETED, None, ""
    previous_revenue = np.nan

    for r in range(schedule.l):
        start, stop = schedule.bounds(r)
        previous_start, previous_stop = schedule.bounds(r - 1)
        if warm_start and r >= 1 and previous_revenue > 0:
            W_prev, estimator_status = previous_revenue, WARM
        else:
            estimate = objective_estimator(
                types[previous_start:previous_stop],
                previous_stop - previous_start,
                epsilon,
                inst,
            )
            if not estimate.feasible:
                status, failure = FAILED, ESTIMATE_INFEASIBLE
                diagnostic = "stage {} estimate is {}".format(r, estimate.status.value)
                break
            W_prev, estimator_status = estimate.W_r, ESTIMATED
        if W_prev <= 0:
            status, failure = FAILED, NONPOSITIVE_ESTIMATE
            diagnostic = "stage {} estimate W={:.6g} is not positive".format(r, W_prev)
            break

        params = stage_params(r, schedule, W_prev, xi, epsilon, gamma1, schedule.delta, inst)
        state = stage_state(inst, params, record=record)
        for s in range(start, stop):
            decisions[s] = state.step(types[s])
        previous_revenue = math.fsum(inst.w[decisions[start:stop], types[start:stop]])
        stages.append(
            StageRecord(
                r=r,
                start=start,
                stop=stop,
                params=params,
                estimator_status=estimator_status,
                realized_revenue=previous_revenue,
            )
        )
        if record:
            segments.append(PotentialSegment(start, stop, state.trajectory()))

    if failure is not None:
        logger.debug("{} run failed: {}".format(algorithm, diagnostic))
    return RunTrace(
        algorithm=algorithm,
        outcome=evaluate_outcome(inst, stream, decisions),
        served_range=(schedule.t_init, T),
        status=status,
        failure=failure,
        diagnostic=diagnostic,
        stages=stages,
        segments=segments,
        xi_used=xi,
    )


def run_algA1(
    inst: Instance,
    stream: RequestStream,
    epsilon: float,
    gamma1: float,
    xi: float,
    warm_start: bool = False,
    record: bool = False,
) -> RunTrace:
    """Staged potential algorithm for an unknown distribution with known measure of feasibility ``xi``.

    The first ``eps T`` requests are only observed.

    :param warm_start: From stage 1 on, use the revenue realized in the previous
        stage instead of solving the estimation LP.
    :raises FeasibilityMarginError: when ``xi <= epsilon``.
    """
    if xi <= epsilon:
        raise FeasibilityMarginError(
            "feasibility margin exhausted: xi={:.6g} <= epsilon={:.6g}".format(xi, epsilon)
        )
    if gamma1 <= 0:
        raise ValueError("gamma1 must be positive, got {}".format(gamma1))
    schedule = make_stage_schedule(epsilon, len(stream), A1_RULE)
    return run_stages(
        inst,
        stream,
        schedule,
        epsilon,
        gamma1,
        xi,
        algorithm=ALG_A1,
        warm_start=warm_start,
        record=record,
    )
