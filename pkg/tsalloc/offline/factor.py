import logging
from typing import NamedTuple

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.lp.simplex import GE, LE, LpProblem, solve
from tsalloc.offline.expected import (
    StrongFeasibilityError,
    measure_of_feasibility,
    solve_expected,
    tau_of,
)

logger = logging.getLogger(__name__)

SENSITIVITY_TOL = 1e-8


def factor_revealing_problem(inst: Instance, epsilon: float) -> LpProblem:
    """Linear form of the factor-revealing program.

    ``min t`` over ``d_ij >= 0, t >= 0`` subject to ``sum_i d_ij <= t`` per type,
    ``sum T p_j a_ijk d_ij <= t U_k`` and
    ``sum T p_j a_ijk d_ij >= t L_k + tau T a_bar_k`` per resource.
    The last variable is ``t``.
    """
    tau = tau_of(epsilon)
    K, J = inst.n_resources, inst.n_types
    n_serving = inst.n_channels - 1
    n_alloc = n_serving * J
    weights = inst.T * inst.probabilities
    usage = (weights[None, :, None] * inst.a[1:]).reshape(n_alloc, K).T

    A = np.zeros((J + 2 * K, n_alloc + 1))
    A[:J, :n_alloc] = np.tile(np.eye(J), (1, n_serving))
    A[:J, -1] = -1.0
    A[J : J + K, :n_alloc] = usage
    A[J : J + K, -1] = -inst.U
    A[J + K :, :n_alloc] = usage
    A[J + K :, -1] = -inst.L
    b = np.concatenate([np.zeros(J + K), tau * inst.T * inst.a_bar])
    c = np.zeros(n_alloc + 1)
    c[-1] = 1.0
    return LpProblem(
        c=c, A=A, senses=[LE] * (J + K) + [GE] * K, b=b, sense="min"
    )


def factor_revealing_t(inst: Instance, epsilon: float) -> float:
    """Smallest ``t`` with ``W_tau >= (1 - t) W_E`` certified by the factor-revealing LP.

    :raises StrongFeasibilityError: when the measure of feasibility does not
        exceed ``tau = epsilon / (1 - epsilon)`` or the LP is infeasible.
    """
    tau = tau_of(epsilon)
    measure = measure_of_feasibility(inst)
    if not measure.strongly_feasible(tau):
        raise StrongFeasibilityError(
            "strong feasibility violated: xi*={} does not exceed tau={:.6g}".format(
                measure.xi_star, tau
            )
        )
    solution = solve(factor_revealing_problem(inst, epsilon))
    if not solution.optimal:
        raise StrongFeasibilityError(
            "strong feasibility violated: factor-revealing LP is {}".format(
                solution.status.value
            )
        )
    t_star = float(solution.objective)
    if t_star >= 1:
        logger.warning(
            "Factor-revealing bound t*={:.4g} certifies no revenue at epsilon={}".format(
                t_star, epsilon
            )
        )
    logger.debug("t*={:.10g} against tau/xi*={:.10g}".format(t_star, tau / measure.xi_star))
    return t_star


class SensitivityCheck(NamedTuple):
    W_tau: float
    W_E: float
    bound_ok: bool


def sensitivity_check(inst: Instance, epsilon: float) -> SensitivityCheck:
    """Compares ``W_tau`` with ``(1 - tau / xi*) W_E``.

    :raises StrongFeasibilityError: when ``E(0)`` or ``E(tau)`` is infeasible.
    """
    tau = tau_of(epsilon)
    measure = measure_of_feasibility(inst)
    if not measure.strongly_feasible(tau):
        raise StrongFeasibilityError(
            "strong feasibility violated: xi*={} does not exceed tau={:.6g}".format(
                measure.xi_star, tau
            )
        )
    expected = solve_expected(inst, 0.0)
    lifted = solve_expected(inst, tau)
    if not (expected.feasible and lifted.feasible):
        raise StrongFeasibilityError("strong feasibility violated for tau={:.6g}".format(tau))
    W_E, W_tau = expected.W_beta, lifted.W_beta
    bound = (1.0 - tau / measure.xi_star) * W_E
    return SensitivityCheck(
        W_tau=W_tau, W_E=W_E, bound_ok=bool(W_tau >= bound - SENSITIVITY_TOL * W_E)
    )
