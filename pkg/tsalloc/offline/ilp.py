import logging
import math
from typing import NamedTuple, Optional

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.stream import RequestStream, sample_stream
from tsalloc.lp.simplex import LpSolution, solve
from tsalloc.offline.expected import allocation_problem, solve_expected

logger = logging.getLogger(__name__)

ENUMERATION_BUDGET = 10 ** 7
CHUNK_SIZE = 1 << 16
BOUND_TOL = 1e-9


class EnumerationBudgetError(ValueError):
    """Raised when an exhaustive search would visit more assignments than allowed."""


class IlpOptimum(NamedTuple):
    revenue: float
    decisions: Optional[np.ndarray]

    @property
    def feasible(self) -> bool:
        return self.decisions is not None


def offline_ilp_solve(
    inst: Instance, stream: RequestStream, budget: int = ENUMERATION_BUDGET
) -> IlpOptimum:
    """Best integral assignment of ``stream`` by exhaustive enumeration.

    Assignments are enumerated as base-``n_channels`` numbers, one digit per
    request, in chunks of ``CHUNK_SIZE``. Ties keep the smallest number.

    :raises EnumerationBudgetError: when ``n_channels ** T`` exceeds ``budget``.
    """
    types = stream.types
    T, n_channels = len(types), inst.n_channels
    if T * math.log(n_channels) > math.log(budget) + 1e-12:
        raise EnumerationBudgetError(
            "instance too large for enumeration: {}^{} assignments exceed {}".format(
                n_channels, T, budget
            )
        )
    total = n_channels ** T
    powers = n_channels ** np.arange(T, dtype=np.int64)
    w = inst.w[:, types]  # (n_channels, T)
    a = inst.a[:, types, :]  # (n_channels, T, K)
    lower = inst.L - BOUND_TOL * (1.0 + np.abs(inst.L))
    upper = inst.U + BOUND_TOL * (1.0 + np.abs(inst.U))
    steps = np.arange(T)

    best_revenue, best_index = -np.inf, -1
    for start in range(0, total, CHUNK_SIZE):
        index = np.arange(start, min(start + CHUNK_SIZE, total), dtype=np.int64)
        decisions = (index[:, None] // powers[None, :]) % n_channels
        revenue = w[decisions, steps].sum(axis=1)
        consumption = a[decisions, steps, :].sum(axis=1)
        ok = np.all((consumption >= lower) & (consumption <= upper), axis=1)
        if not np.any(ok):
            continue
        candidates = np.where(ok, revenue, -np.inf)
        position = int(np.argmax(candidates))
        if candidates[position] > best_revenue:
            best_revenue, best_index = float(candidates[position]), int(index[position])

    if best_index < 0:
        logger.debug("No feasible assignment for {}".format(stream))
        return IlpOptimum(revenue=-np.inf, decisions=None)
    decisions = (best_index // powers) % n_channels
    return IlpOptimum(revenue=best_revenue, decisions=decisions)


def offline_ilp_opt(
    inst: Instance, stream: RequestStream, budget: int = ENUMERATION_BUDGET
) -> float:
    """Offline integral optimum ``W_R`` of ``stream``; ``-inf`` when nothing is feasible."""
    return offline_ilp_solve(inst, stream, budget=budget).revenue


def per_request_instance(inst: Instance, stream: RequestStream) -> Instance:
    """Instance whose types are the individual requests of ``stream``, each with weight 1 / T."""
    types = stream.types
    return Instance(
        p=np.full(len(types), 1.0 / len(types)),
        w=inst.w[:, types],
        a=inst.a[:, types, :],
        L=inst.L,
        U=inst.U,
        T=len(types),
        channels=inst.channels,
    )


def sampled_relaxation(inst: Instance, stream: RequestStream) -> LpSolution:
    """LP relaxation of the offline integer program, one variable per (request, channel)."""
    requests = per_request_instance(inst, stream)
    return solve(allocation_problem(requests, np.ones(len(stream))))


class ExpectationBoundCheck(NamedTuple):
    mean: float
    standard_error: float
    W_E: float
    n_streams: int
    n_infeasible: int
    holds: bool


def check_expectation_bound(
    inst: Instance, n_streams: int = 2000, base_seed: int = 0
) -> ExpectationBoundCheck:
    """Checks that the mean offline optimum over sampled streams stays below ``W_E``.

    Streams without a feasible assignment contribute revenue 0. The bound holds
    when the mean is at most ``W_E`` plus three standard errors.
    """
    if n_streams < 2:
        raise ValueError("Need at least two streams, got {}".format(n_streams))
    expected = solve_expected(inst, 0.0)
    if not expected.feasible:
        raise ValueError("The expected instance is infeasible")
    revenues = np.empty(n_streams)
    n_infeasible = 0
    for offset in range(n_streams):
        revenue = offline_ilp_opt(inst, sample_stream(inst, base_seed + offset))
        if not np.isfinite(revenue):
            n_infeasible += 1
            revenue = 0.0
        revenues[offset] = revenue
    mean = float(revenues.mean())
    standard_error = float(revenues.std(ddof=1) / math.sqrt(n_streams))
    logger.info(
        "Mean offline optimum {:.6g} +- {:.3g} against W_E={:.6g} over {} streams".format(
            mean, standard_error, expected.W_beta, n_streams
        )
    )
    return ExpectationBoundCheck(
        mean=mean,
        standard_error=standard_error,
        W_E=expected.W_beta,
        n_streams=n_streams,
        n_infeasible=n_infeasible,
        holds=bool(mean <= expected.W_beta + 3.0 * standard_error),
    )
