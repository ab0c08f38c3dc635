import logging
import math

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.outcome import evaluate_outcome
from tsalloc.dataset.stream import RequestStream
from tsalloc.online.potentials import PotentialState
from tsalloc.online.trace import PotentialSegment, RunTrace

logger = logging.getLogger(__name__)

ALG_A = "algA"


def alg_a_rates(inst: Instance, epsilon: float):
    """``c1k = -ln(1 - eps) / a_bar_k`` and ``c2 = -ln(1 - eps) / w_bar``."""
    rate = -math.log1p(-epsilon)
    return rate / inst.a_bar, rate / inst.w_bar


def alg_a_state(inst: Instance, epsilon: float, W_tau: float, record: bool = False) -> PotentialState:
    """Unit potentials with per-request targets ``U/T``, ``L/T`` and ``(1 - 2 eps) W_tau / T``."""
    c1k, c2 = alg_a_rates(inst, epsilon)
    T = inst.T
    return PotentialState.from_targets(
        inst,
        c1k=c1k,
        c2=c2,
        upper_target=inst.U / T,
        lower_target=inst.L / T,
        revenue_target=(1.0 - 2.0 * epsilon) * W_tau / T,
        record=record,
    )


def run_algA(
    inst: Instance,
    stream: RequestStream,
    epsilon: float,
    W_tau: float,
    record: bool = False,
) -> RunTrace:
    """Greedy potential algorithm knowing only the bounds and the benchmark ``W_tau``.

    Every request goes to the channel minimizing the capacity, covering and
    revenue potentials it would produce; the arrival distribution is never used.

    :param record: Keep the log-potential trajectory in the trace.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1), got {}".format(epsilon))
    if W_tau <= 0:
        raise ValueError("W_tau must be positive, got {}".format(W_tau))
    state = alg_a_state(inst, epsilon, W_tau, record=record)
    types = stream.types
    decisions = np.zeros(len(types), dtype=np.int64)
    for s, j in enumerate(types):
        decisions[s] = state.step(j)
    outcome = evaluate_outcome(inst, stream, decisions)
    segments = []
    if record:
        segments.append(PotentialSegment(0, len(types), state.trajectory()))
    logger.debug(
        "Algorithm A revenue {:.6g}, feasible {}".format(outcome.revenue, outcome.feasible)
    )
    return RunTrace(
        algorithm=ALG_A,
        outcome=outcome,
        served_range=(0, len(types)),
        segments=segments,
    )
