"""Exponential potentials kept as logarithms.

The state vector is ``[log phi_1..K, log varphi_1..K, log psi]``. Serving type
``j`` on channel ``i`` multiplies the potentials by ``exp(inc[j, i])``, so the
score of a channel is the max-shifted log of ``sum(exp(log_potentials + inc[j, i]))``,
the three-term sum the greedy step minimizes.
"""

import logging
from typing import List, Optional

import numpy as np

from tsalloc.dataset.instance import Instance

logger = logging.getLogger(__name__)


def potential_increments(
    inst: Instance,
    c1k: np.ndarray,
    c2: float,
    upper_target: np.ndarray,
    lower_target: np.ndarray,
    revenue_target: float,
) -> np.ndarray:
    """Log-factor table with shape (n_types, n_channels, 2K + 1).

    ``c1k (a_ijk - upper_k)`` for the capacity potentials,
    ``c1k (lower_k - a_ijk)`` for the covering potentials and
    ``c2 (revenue_target - w_ij)`` for the revenue potential.
    """
    K = inst.n_resources
    a = np.transpose(inst.a, (1, 0, 2))  # (J, I, K)
    w = inst.w.T  # (J, I)
    inc = np.empty(a.shape[:2] + (2 * K + 1,))
    inc[:, :, :K] = c1k * (a - upper_target)
    inc[:, :, K : 2 * K] = c1k * (lower_target - a)
    inc[:, :, 2 * K] = c2 * (revenue_target - w)
    return inc


class PotentialState:
    """Potentials of one run or stage, confined to a single decision loop.

    :param increments: Table from :func:`potential_increments`.
    :param drift: ``np.ndarray`` with shape (2K + 1,). Added to the log
        potentials after every step, never to the scores.
    :param initial: Initial log potentials.
    :param record: Keep the log potentials after every step.
    """

    def __init__(
        self,
        increments: np.ndarray,
        drift: Optional[np.ndarray] = None,
        initial: Optional[np.ndarray] = None,
        record: bool = False,
    ):
        self.increments = increments
        size = increments.shape[2]
        self.drift = np.zeros(size) if drift is None else np.asarray(drift, dtype=np.float64)
        self.log_potentials = (
            np.zeros(size) if initial is None else np.array(initial, dtype=np.float64)
        )
        # increment plus drift, one row per (type, channel)
        self._moves = increments + self.drift
        self.record = record
        self.history: List[np.ndarray] = [self.log_potentials.copy()] if record else []
        self.n_steps = 0

    @classmethod
    def from_targets(
        cls,
        inst: Instance,
        c1k: np.ndarray,
        c2: float,
        upper_target: np.ndarray,
        lower_target: np.ndarray,
        revenue_target: float,
        drift_x: float = 0.0,
        drift_y: float = 0.0,
        init_log_phi: float = 0.0,
        init_log_psi: float = 0.0,
        record: bool = False,
    ) -> "PotentialState":
        K = inst.n_resources
        increments = potential_increments(
            inst, c1k, c2, upper_target, lower_target, revenue_target
        )
        drift = np.concatenate([np.full(2 * K, drift_x), [drift_y]])
        initial = np.concatenate([np.full(2 * K, init_log_phi), [init_log_psi]])
        return cls(increments, drift=drift, initial=initial, record=record)

    @property
    def potentials(self) -> np.ndarray:
        return np.exp(self.log_potentials)

    def scores(self, j: int) -> np.ndarray:
        """Log of the greedy score of every channel for a type-``j`` request."""
        exponents = self.log_potentials + self.increments[j]
        top = exponents.max(axis=1)
        return top + np.log(np.exp(exponents - top[:, None]).sum(axis=1))

    def choose(self, j: int) -> int:
        """Channel with the smallest score, the lowest index among ties."""
        return int(np.argmin(self.scores(j)))

    def step(self, j: int) -> int:
        i = self.choose(j)
        self.log_potentials += self._moves[j, i]
        self.n_steps += 1
        if self.record:
            self.history.append(self.log_potentials.copy())
        return i

    def trajectory(self) -> np.ndarray:
        """Log potentials before the first step and after every step."""
        if not self.record:
            raise ValueError("Trajectory was not recorded")
        return np.array(self.history)
