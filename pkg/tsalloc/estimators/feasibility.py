import logging
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.estimators.objective import check_requests
from tsalloc.lp.simplex import LpStatus, solve
from tsalloc.offline.expected import allocation_problem

logger = logging.getLogger(__name__)


def feasibility_error(gamma2: float, T: int, t_r: int, n_resources: int, delta: float) -> float:
    """``sqrt(4 gamma2 T ln(K / delta) / t_r)``.

    The staged algorithm uses ``ln((2K + 1) / delta)`` in its own error terms;
    this estimator keeps ``ln(K / delta)``.
    """
    return math.sqrt(4.0 * gamma2 * T * math.log(n_resources / delta) / t_r)


@dataclass(frozen=True)
class FeasibilityEstimate:
    """Measure of feasibility estimated from ``t_r`` requests.

    :param xi_max: Optimum of the sampled feasibility LP.
    :param xi_hat: ``xi_max - 2 eps_xr`` clipped to [0, 1].
    """

    xi_hat: float
    xi_max: float
    eps_xr: float
    t_r: int
    status: LpStatus

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def feas_estimator(
    requests: Union[Sequence[int], np.ndarray],
    t_r: int,
    gamma2: float,
    delta: float,
    inst: Instance,
) -> FeasibilityEstimate:
    """Estimates the measure of feasibility from observed requests.

    Solves the sampled feasibility LP (bounds scaled by ``t_r / T``, ``xi >= 0``)
    and backs its optimum off by twice the sampling error.
    """
    requests = check_requests(requests, t_r, inst)
    if gamma2 <= 0:
        raise ValueError("gamma2 must be positive, got {}".format(gamma2))
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1), got {}".format(delta))
    eps_xr = feasibility_error(gamma2, inst.T, t_r, inst.n_resources, delta)
    counts = np.bincount(requests, minlength=inst.n_types).astype(np.float64)
    problem = allocation_problem(inst, counts, scale=t_r / inst.T, with_xi=True)
    solution = solve(problem)
    if not solution.optimal:
        logger.debug("Feasibility estimate on {} requests is {}".format(t_r, solution.status.value))
        return FeasibilityEstimate(
            xi_hat=np.nan, xi_max=np.nan, eps_xr=eps_xr, t_r=t_r, status=solution.status
        )
    xi_max = max(float(solution.x[-1]), 0.0)
    raw = xi_max - 2.0 * eps_xr
    xi_hat = float(np.clip(raw, 0.0, 1.0))
    if xi_hat != raw:
        logger.warning(
            "Feasibility estimate {:.4g} clipped to {:.4g} (xi_max={:.4g}, eps={:.4g})".format(
                raw, xi_hat, xi_max, eps_xr
            )
        )
    return FeasibilityEstimate(
        xi_hat=xi_hat, xi_max=xi_max, eps_xr=eps_xr, t_r=t_r, status=solution.status
    )
