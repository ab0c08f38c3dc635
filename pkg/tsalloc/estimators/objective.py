import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.lp.simplex import LpStatus, solve
from tsalloc.offline.expected import allocation_problem

logger = logging.getLogger(__name__)


def check_requests(requests: Union[Sequence[int], np.ndarray], t_r: int, inst: Instance) -> np.ndarray:
    requests = np.asarray(requests, dtype=np.int64)
    if t_r < 1:
        raise ValueError("A sample needs at least one request, got t_r={}".format(t_r))
    if requests.ndim != 1 or requests.shape[0] != t_r:
        raise ValueError(
            "Expected {} requests, got shape {}".format(t_r, requests.shape)
        )
    if requests.min() < 0 or requests.max() >= inst.n_types:
        raise ValueError("Requests hold type indices outside [0, {})".format(inst.n_types))
    return requests


@dataclass(frozen=True)
class ObjectiveEstimate:
    """Optimum ``W_r`` of the expected instance rebuilt from ``t_r`` observed requests."""

    W_r: float
    t_r: int
    beta: float
    status: LpStatus

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def objective_estimator(
    requests: Union[Sequence[int], np.ndarray],
    t_r: int,
    beta: float,
    inst: Instance,
) -> ObjectiveEstimate:
    """Solves the sampled allocation LP over ``requests`` with bounds scaled by ``t_r / T``.

    Requests of one type are interchangeable, so the LP is solved with one
    variable per (channel, type) weighted by the type counts; it has the same
    optimum as the per-request program.
    """
    requests = check_requests(requests, t_r, inst)
    counts = np.bincount(requests, minlength=inst.n_types).astype(np.float64)
    problem = allocation_problem(inst, counts, scale=t_r / inst.T, beta=beta)
    solution = solve(problem)
    if not solution.optimal:
        logger.debug(
            "Objective estimate on {} requests with beta={} is {}".format(
                t_r, beta, solution.status.value
            )
        )
        return ObjectiveEstimate(W_r=np.nan, t_r=t_r, beta=beta, status=solution.status)
    return ObjectiveEstimate(
        W_r=solution.objective, t_r=t_r, beta=beta, status=solution.status
    )
