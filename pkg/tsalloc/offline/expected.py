import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.lp.simplex import GE, LE, LpProblem, LpSolution, LpStatus, solve

logger = logging.getLogger(__name__)


class StrongFeasibilityError(ValueError):
    """Raised when an instance lacks the feasibility margin an operation requires."""


def allocation_problem(
    inst: Instance,
    weights: np.ndarray,
    scale: float = 1.0,
    beta: float = 0.0,
    with_xi: bool = False,
) -> LpProblem:
    """Fractional allocation LP over the serving channels.

    Variable ``(i - 1) * J + j`` is the fraction of type-``j`` weight sent to
    channel ``i >= 1``; whatever is left goes to the no-service channel. With
    ``with_xi`` a last variable ``xi`` is appended and maximized instead of revenue.

    Rows, in order: K capacity rows ``sum q_j a_ijk x_ij <= scale * U_k``,
    K covering rows ``sum q_j a_ijk x_ij >= scale * (L_k + beta * T * a_bar_k)``
    (``- xi * scale * T * a_bar_k`` on the left with ``with_xi``), then J
    assignment rows ``sum_i x_ij <= 1``.

    :param weights: ``np.ndarray`` with shape (n_types,). ``T * p_j`` for the
        expected instance, type counts ``n_j`` for a sampled one.
    :param scale: Factor on the bounds, ``t / T`` for a sample of ``t`` requests.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (inst.n_types,):
        raise ValueError(
            "Need one weight per type, got shape {}".format(weights.shape)
        )
    if beta < 0:
        raise ValueError("beta must be non-negative, got {}".format(beta))
    K, J = inst.n_resources, inst.n_types
    n_serving = inst.n_channels - 1
    n_alloc = n_serving * J
    n_vars = n_alloc + int(with_xi)

    # usage[k, (i - 1) * J + j] = q_j a_ijk
    usage = (weights[None, :, None] * inst.a[1:]).reshape(n_alloc, K).T
    assignment = np.tile(np.eye(J), (1, n_serving))
    covering_rhs = scale * (inst.L + beta * inst.T * inst.a_bar)

    A = np.zeros((2 * K + J, n_vars))
    A[:K, :n_alloc] = usage
    A[K : 2 * K, :n_alloc] = usage
    A[2 * K :, :n_alloc] = assignment
    b = np.concatenate([scale * inst.U, covering_rhs, np.ones(J)])
    senses = [LE] * K + [GE] * K + [LE] * J

    if with_xi:
        A[K : 2 * K, -1] = -scale * inst.T * inst.a_bar
        c = np.zeros(n_vars)
        c[-1] = 1.0
    else:
        c = (weights[None, :] * inst.w[1:]).ravel()
    return LpProblem(c=c, A=A, senses=senses, b=b, sense="max")


def allocation_policy(inst: Instance, x: np.ndarray) -> np.ndarray:
    """Reshapes an allocation LP solution into an (n_channels, n_types) policy.

    Row 0 stays zero: the no-service channel takes the remaining mass implicitly.
    """
    n_serving = inst.n_channels - 1
    policy = np.zeros((inst.n_channels, inst.n_types))
    policy[1:] = np.clip(x[: n_serving * inst.n_types], 0.0, None).reshape(
        n_serving, inst.n_types
    )
    return policy


@dataclass(frozen=True, eq=False)
class ExpectedSolution:
    """Optimum of the expected instance with covering bounds lifted by ``beta * T * a_bar``.

    :param W_beta: Optimal expected revenue, ``nan`` when infeasible.
    :param x_star: ``np.ndarray`` with shape (n_channels, n_types). Fractional policy.
    :param alpha: Multipliers of the capacity rows.
    :param beta_k: Multipliers of the covering rows, non-negative.
    :param rho: Multipliers of the assignment rows.
    """

    beta: float
    status: LpStatus
    W_beta: float = np.nan
    x_star: Optional[np.ndarray] = None
    alpha: Optional[np.ndarray] = None
    beta_k: Optional[np.ndarray] = None
    rho: Optional[np.ndarray] = None
    lp: Optional[LpSolution] = None

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.OPTIMAL

    def consumption(self, inst: Instance) -> np.ndarray:
        """Expected consumption of ``x_star`` per resource."""
        return np.einsum("j,ij,ijk->k", inst.T * inst.probabilities, self.x_star, inst.a)

    def dual_value(self, inst: Instance) -> float:
        """Dual objective ``sum alpha U - sum beta_k (L + beta T a_bar) + sum rho``."""
        lifted = inst.L + self.beta * inst.T * inst.a_bar
        return float(self.alpha @ inst.U - self.beta_k @ lifted + self.rho.sum())


def solve_expected(inst: Instance, beta: float = 0.0) -> ExpectedSolution:
    """Solves the expected instance with lifted covering bounds.

    ``beta = 0`` gives the expected revenue ``W_E`` itself.
    An infeasible program is a status: callers try values of ``beta`` close to the
    measure of feasibility.
    """
    K = inst.n_resources
    problem = allocation_problem(
        inst, inst.T * inst.probabilities, scale=1.0, beta=beta
    )
    solution = solve(problem)
    if not solution.optimal:
        logger.debug("Expected instance with beta={} is {}".format(beta, solution.status.value))
        return ExpectedSolution(beta=beta, status=solution.status, lp=solution)
    return ExpectedSolution(
        beta=beta,
        status=solution.status,
        W_beta=solution.objective,
        x_star=allocation_policy(inst, solution.x),
        alpha=solution.y[:K],
        beta_k=-solution.y[K : 2 * K],
        rho=solution.y[2 * K :],
        lp=solution,
    )


@dataclass(frozen=True, eq=False)
class FeasibilityMeasure:
    """Largest uniform lift ``xi`` of the covering bounds the expected instance supports.

    :param xi_star: ``nan`` when even the unlifted instance is infeasible.
    :param cap: Analytic upper bound ``min_k (1 - L_k / (T a_bar_k))``.
    :param x_star: Policy attaining ``xi_star``.
    """

    status: LpStatus
    xi_star: float = np.nan
    cap: float = np.nan
    x_star: Optional[np.ndarray] = None

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.OPTIMAL

    def strongly_feasible(self, tau: float) -> bool:
        return self.feasible and self.xi_star > tau


def feasibility_cap(inst: Instance) -> float:
    return float(np.min(1.0 - inst.L / (inst.T * inst.a_bar)))


def measure_of_feasibility(inst: Instance) -> FeasibilityMeasure:
    """Measure of feasibility, solved as one LP with ``xi >= 0`` as an extra variable."""
    problem = allocation_problem(
        inst, inst.T * inst.probabilities, scale=1.0, with_xi=True
    )
    solution = solve(problem)
    cap = feasibility_cap(inst)
    if not solution.optimal:
        logger.debug("Measure of feasibility LP is {}".format(solution.status.value))
        return FeasibilityMeasure(status=solution.status, cap=cap)
    xi_star = float(min(max(solution.x[-1], 0.0), cap))
    logger.debug("Measure of feasibility {:.10g} (cap {:.10g})".format(xi_star, cap))
    return FeasibilityMeasure(
        status=solution.status,
        xi_star=xi_star,
        cap=cap,
        x_star=allocation_policy(inst, solution.x),
    )


def tau_of(epsilon: float) -> float:
    """Lift ``epsilon / (1 - epsilon)`` used by the policy-following algorithm."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1), got {}".format(epsilon))
    return epsilon / (1.0 - epsilon)
