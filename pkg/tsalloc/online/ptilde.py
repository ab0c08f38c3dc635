import logging

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.outcome import evaluate_outcome
from tsalloc.dataset.stream import ROUTING_KEY, RequestStream, make_rng
from tsalloc.offline.expected import StrongFeasibilityError, solve_expected, tau_of
from tsalloc.online.trace import RunTrace

logger = logging.getLogger(__name__)

PTILDE = "ptilde"


def routing_probabilities(x_star: np.ndarray, epsilon: float) -> np.ndarray:
    """``(1 - eps) x*`` with shape (n_channels, n_types); row 0 takes the remainder."""
    probabilities = (1.0 - epsilon) * np.asarray(x_star, dtype=np.float64)
    probabilities[0] = 0.0
    probabilities[0] = np.clip(1.0 - probabilities.sum(axis=0), 0.0, 1.0)
    return probabilities


def route(probabilities: np.ndarray, types: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF routing over the serving channels with uniforms ``u``.

    A request of type ``j`` goes to serving channel ``i`` when ``u`` falls in its
    slice of the cumulative serving mass, to the no-service channel otherwise.
    """
    n_serving = probabilities.shape[0] - 1
    cumulative = np.cumsum(probabilities[1:, types], axis=0)
    passed = np.sum(u[None, :] >= cumulative, axis=0)
    return np.where(passed == n_serving, 0, passed + 1)


def run_ptilde(
    inst: Instance, stream: RequestStream, epsilon: float, seed: int = None
) -> RunTrace:
    """Follows the lifted expected policy: type ``j`` goes to ``i`` with probability ``(1 - eps) x(tau)*_ij``.

    :param seed: Seed of the routing draws. Default: the stream seed (0 for
        streams without one). Routing uses its own key so it never reuses the
        stream's draws.
    :raises StrongFeasibilityError: when the lifted expected instance is infeasible.
    """
    tau = tau_of(epsilon)
    lifted = solve_expected(inst, tau)
    if not lifted.feasible:
        raise StrongFeasibilityError("strong feasibility violated for τ={:.6g}".format(tau))
    if seed is None:
        seed = max(stream.seed, 0)
    probabilities = routing_probabilities(lifted.x_star, epsilon)
    u = make_rng(seed, ROUTING_KEY).random(len(stream))
    decisions = route(probabilities, stream.types, u)
    outcome = evaluate_outcome(inst, stream, decisions)
    logger.debug("P-tilde served {} of {} requests".format(outcome.n_served, len(stream)))
    return RunTrace(algorithm=PTILDE, outcome=outcome, served_range=(0, len(stream)))
