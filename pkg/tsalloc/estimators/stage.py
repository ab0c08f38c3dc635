import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from tsalloc.dataset.instance import Instance

if TYPE_CHECKING:
    from tsalloc.online.schedule import StageSchedule

logger = logging.getLogger(__name__)


class FeasibilityMarginError(ValueError):
    """Raised when the feasibility margin ``xi - epsilon`` is not positive."""


def union_log_term(n_resources: int, delta: float) -> float:
    """``ln((2K + 1) / delta)``: one term per potential, union-bounded."""
    return math.log((2 * n_resources + 1) / delta)


def constraint_error(gamma1: float, T: int, t_r: int, n_resources: int, delta: float) -> float:
    """``sqrt(4 T gamma1 ln((2K + 1) / delta) / t_r)``."""
    return math.sqrt(4.0 * T * gamma1 * union_log_term(n_resources, delta) / t_r)


def revenue_error(Z_r: float, w_bar: float, T: int, t_r: int, n_resources: int, delta: float) -> float:
    """``sqrt(4 T ln((2K + 1) / delta) w_bar / (Z_r t_r))``."""
    return math.sqrt(4.0 * T * union_log_term(n_resources, delta) * w_bar / (Z_r * t_r))


@dataclass(frozen=True, eq=False)
class StageParams:
    """Error parameters, potential rates and per-request targets of one stage.

    Targets are per request: the capacity target ``(1 + eps_x) U_k / T``, the
    covering target ``a_bar_k - (1 + eps_x)((1 - eps) T a_bar_k - L_k) / T`` and the
    revenue target ``(1 - eps_y) Z_r / T``. Drifts are added to the log potentials
    at every step, ``init_log_*`` are their starting values.
    """

    r: int
    t_r: int
    t_prev: int
    W_prev: float
    Z_r: float
    eps_x: float
    eps_y: float
    eps_x_prev: float
    c1k: np.ndarray
    c2: float
    upper_target: np.ndarray
    lower_target: np.ndarray
    revenue_target: float
    drift_x: float
    drift_y: float
    init_log_phi: float
    init_log_psi: float

    def to_dict(self):
        return dict(
            r=self.r,
            t_r=self.t_r,
            t_prev=self.t_prev,
            W_prev=self.W_prev,
            Z_r=self.Z_r,
            eps_x=self.eps_x,
            eps_y=self.eps_y,
            eps_x_prev=self.eps_x_prev,
            c1k=self.c1k.tolist(),
            c2=self.c2,
            drift_x=self.drift_x,
            drift_y=self.drift_y,
            init_log_phi=self.init_log_phi,
            init_log_psi=self.init_log_psi,
        )


def stage_params(
    r: int,
    schedule: "StageSchedule",
    W_prev: float,
    xi: float,
    epsilon: float,
    gamma1: float,
    delta: float,
    inst: Instance,
) -> StageParams:
    """Parameters of stage ``r`` given the estimate ``W_prev`` from stage ``r - 1``.

    ``Z_r = T W_prev / ((1 + (2 + 1 / (xi - eps)) eps_x_prev) t_prev)`` where
    ``eps_x_prev`` is the constraint error at the previous stage size; stage -1
    has ``t_prev = t_init``.

    :raises FeasibilityMarginError: when ``xi <= epsilon``.
    """
    if xi <= epsilon:
        raise FeasibilityMarginError(
            "feasibility margin exhausted: xi={:.6g} <= epsilon={:.6g}".format(xi, epsilon)
        )
    if W_prev <= 0:
        raise ValueError("Stage estimate must be positive, got W_prev={}".format(W_prev))
    if gamma1 < 0:
        raise ValueError("gamma1 must be non-negative, got {}".format(gamma1))
    if not 0 <= r < schedule.l:
        raise ValueError("Stage {} outside [0, {})".format(r, schedule.l))

    T, K = inst.T, inst.n_resources
    a_bar, w_bar = inst.a_bar, inst.w_bar
    t_r = schedule.stage_size(r)
    t_prev = schedule.stage_size(r - 1)
    log_term = union_log_term(K, delta)

    eps_x_prev = constraint_error(gamma1, T, t_prev, K, delta)
    Z_r = T * W_prev / ((1.0 + (2.0 + 1.0 / (xi - epsilon)) * eps_x_prev) * t_prev)
    eps_x = constraint_error(gamma1, T, t_r, K, delta)
    eps_y = revenue_error(Z_r, w_bar, T, t_r, K, delta)
    c1k = np.log1p(eps_x) / a_bar
    c2 = math.log1p(eps_y) / w_bar

    # eps_x^2 / (4 T gamma1) tends to ln((2K + 1) / delta) / t_r as gamma1 -> 0
    drift_x = eps_x ** 2 / (4.0 * T * gamma1) if gamma1 > 0 else log_term / t_r
    drift_y = eps_y ** 2 * Z_r / (4.0 * T * w_bar)

    params = StageParams(
        r=r,
        t_r=t_r,
        t_prev=t_prev,
        W_prev=W_prev,
        Z_r=Z_r,
        eps_x=eps_x,
        eps_y=eps_y,
        eps_x_prev=eps_x_prev,
        c1k=c1k,
        c2=c2,
        upper_target=(1.0 + eps_x) * inst.U / T,
        lower_target=a_bar - (1.0 + eps_x) * ((1.0 - epsilon) * T * a_bar - inst.L) / T,
        revenue_target=(1.0 - eps_y) * Z_r / T,
        drift_x=drift_x,
        drift_y=drift_y,
        init_log_phi=-(t_r - 1) * drift_x,
        init_log_psi=-(t_r - 1) * drift_y,
    )
    logger.debug(
        "Stage {}: t_r={}, W_prev={:.6g}, Z_r={:.6g}, eps_x={:.4g}, eps_y={:.4g}".format(
            r, t_r, W_prev, Z_r, eps_x, eps_y
        )
    )
    return params
