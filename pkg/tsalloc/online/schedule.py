import logging
import math
from dataclasses import dataclass
from typing import Tuple

logger = logging.getLogger(__name__)

A1_RULE = "A1"
A2_RULE = "A2"


@dataclass(frozen=True)
class StageSchedule:
    """Observation stage of ``t_init`` requests followed by ``l`` doubling stages.

    Stage ``-1`` covers requests ``[0, t_init)``; stage ``r`` covers
    ``[start(r), stop(r))``. The last stage absorbs rounding so that every
    request of the horizon belongs to exactly one stage.
    """

    epsilon: float
    T: int
    l: int
    delta: float
    t_init: int
    t: Tuple[int, ...]
    rule: str = A1_RULE

    def stage_size(self, r: int) -> int:
        if r == -1:
            return self.t_init
        return self.t[r]

    def start(self, r: int) -> int:
        return self.t_init + sum(self.t[:r]) if r >= 0 else 0

    def stop(self, r: int) -> int:
        return self.start(r) + self.stage_size(r)

    def bounds(self, r: int) -> Tuple[int, int]:
        return self.start(r), self.stop(r)

    @property
    def n_served(self) -> int:
        return self.T - self.t_init


def make_stage_schedule(epsilon: float, T: int, delta_rule: str = A1_RULE) -> StageSchedule:
    """Geometric stage sizes ``t_r = floor(eps 2^r T)`` after ``t_init = floor(eps T)``.

    ``l = ceil(log2(1 / eps))``; the final stage is extended or truncated so that
    ``t_init + sum(t) == T``. ``delta`` is ``eps / (3l)`` under the ``"A1"`` rule
    and ``eps / (3l + 2)`` under the ``"A2"`` rule.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1), got {}".format(epsilon))
    if T * epsilon < 1 - 1e-12:
        raise ValueError("Need T >= 1/epsilon, got T={} and epsilon={}".format(T, epsilon))
    if delta_rule not in (A1_RULE, A2_RULE):
        raise ValueError("Unknown delta rule {}".format(delta_rule))
    l = max(1, math.ceil(math.log2(1.0 / epsilon) - 1e-12))
    t_init = math.floor(epsilon * T + 1e-9)
    sizes = [math.floor(epsilon * 2 ** r * T + 1e-9) for r in range(l - 1)]
    sizes.append(T - t_init - sum(sizes))
    if t_init < 1 or min(sizes) < 1:
        raise ValueError(
            "Horizon T={} is too short for epsilon={}: stage sizes {} and {}".format(
                T, epsilon, t_init, sizes
            )
        )
    delta = epsilon / (3 * l) if delta_rule == A1_RULE else epsilon / (3 * l + 2)
    schedule = StageSchedule(
        epsilon=epsilon, T=T, l=l, delta=delta, t_init=t_init, t=tuple(sizes), rule=delta_rule
    )
    logger.debug("Stage schedule {} + {} with delta={:.4g}".format(t_init, sizes, delta))
    return schedule
