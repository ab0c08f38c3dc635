import logging
from dataclasses import dataclass

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.stream import GENERATOR_KEY, make_rng

logger = logging.getLogger(__name__)


def single_channel_instance(
    T: int = 1000, lower_fraction: float = 0.2, upper_fraction: float = 1.0
) -> Instance:
    """One type, one serving channel with unit revenue and unit consumption.

    Bounds are ``lower_fraction * T`` and ``upper_fraction * T``.
    """
    return Instance.with_null_channel(
        p=[1.0],
        w=[[1.0]],
        a=[[[1.0]]],
        L=[lower_fraction * T],
        U=[upper_fraction * T],
        T=T,
        channels=["serve"],
    )


def tight_two_channel_instance(T: int = 1000) -> Instance:
    """One type, a revenue channel that consumes nothing and a covering channel
    that earns nothing, with half of the horizon owed to the covering channel.

    Its measure of feasibility is 0.5 and the sensitivity bound is attained.
    """
    return Instance.with_null_channel(
        p=[1.0],
        w=[[1.0], [0.0]],
        a=[[[0.0]], [[1.0]]],
        L=[0.5 * T],
        U=[1.0 * T],
        T=T,
        channels=["revenue", "cover"],
    )


@dataclass(frozen=True, eq=False)
class GeneratedInstance:
    """A random instance together with the interior policy it was built around.

    :param xi_lower_bound: lift the interior policy certifies, so the measure of
        feasibility of ``instance`` is at least this value.
    """

    instance: Instance
    policy: np.ndarray
    xi_lower_bound: float


class RandomInstanceGenerator:
    """Random instances satisfying the strong feasible condition by construction.

    A policy filling a fraction ``fill`` of each type is drawn first; its expected
    consumption ``c_k`` then fixes ``L_k = max(0, c_k - lower_margin * T * a_bar_k)``
    and ``U_k = c_k + upper_margin * T * a_bar_k``.

    :param n_resources: Number of resources K.
    :param n_types: Number of request types J.
    :param n_channels: Number of serving channels, the no-service channel excluded.
    :param T: Horizon.
    :param lower_margin: Lift below the policy consumption, in units of ``T * a_bar_k``.
    :param upper_margin: Slack above the policy consumption, in units of ``T * a_bar_k``.
    :param fill: Total mass the interior policy puts on serving channels per type.
    :param sparsity: Probability that a (channel, type, resource) consumption is zero.
    """

    def __init__(
        self,
        n_resources: int = 2,
        n_types: int = 2,
        n_channels: int = 2,
        T: int = 1000,
        lower_margin: float = 0.2,
        upper_margin: float = 0.2,
        fill: float = 0.8,
        sparsity: float = 0.0,
    ):
        if min(n_resources, n_types, n_channels, T) < 1:
            raise ValueError("Generator sizes must be positive")
        if not 0 < fill <= 1:
            raise ValueError("fill must lie in (0, 1], got {}".format(fill))
        if lower_margin < 0 or upper_margin < 0:
            raise ValueError("Margins must be non-negative")
        self.n_resources = n_resources
        self.n_types = n_types
        self.n_channels = n_channels
        self.T = T
        self.lower_margin = lower_margin
        self.upper_margin = upper_margin
        self.fill = fill
        self.sparsity = sparsity

    def generate(self, seed: int) -> GeneratedInstance:
        rng = make_rng(seed, GENERATOR_KEY)
        K, J, n_serving, T = self.n_resources, self.n_types, self.n_channels, self.T

        p = rng.dirichlet(np.ones(J))
        w = rng.uniform(0.1, 1.0, size=(n_serving, J))
        a = rng.uniform(0.1, 1.0, size=(n_serving, J, K))
        if self.sparsity > 0:
            a *= rng.random(size=a.shape) >= self.sparsity
        # every resource must be consumed somewhere
        a[0, :, :] = np.maximum(a[0, :, :], 0.1)
        policy = self.fill * rng.dirichlet(np.ones(n_serving), size=J).T

        a_bar = a.max(axis=(0, 1))
        consumption = np.einsum("j,ij,ijk->k", T * p, policy, a)
        L = np.maximum(0.0, consumption - self.lower_margin * T * a_bar)
        U = consumption + self.upper_margin * T * a_bar
        xi_lower_bound = float(np.min((consumption - L) / (T * a_bar)))

        inst = Instance.with_null_channel(p=p, w=w, a=a, L=L, U=U, T=T)
        full_policy = np.concatenate([np.zeros((1, J)), policy])
        logger.debug(
            "Generated {} with xi lower bound {:.4f}".format(inst, xi_lower_bound)
        )
        return GeneratedInstance(
            instance=inst, policy=full_policy, xi_lower_bound=xi_lower_bound
        )

    def to_dict(self):
        return dict(
            n_resources=self.n_resources,
            n_types=self.n_types,
            n_channels=self.n_channels,
            T=self.T,
            lower_margin=self.lower_margin,
            upper_margin=self.upper_margin,
            fill=self.fill,
            sparsity=self.sparsity,
        )
