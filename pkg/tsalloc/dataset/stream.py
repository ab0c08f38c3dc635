import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from tsalloc.dataset.instance import Instance

logger = logging.getLogger(__name__)

# keys separating the independent random streams drawn from one seed
STREAM_KEY = 0
ROUTING_KEY = 1
GENERATOR_KEY = 2


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator for ``seed``; distinct ``keys`` give independent streams."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([int(seed)] + [int(k) for k in keys]))
    )


@dataclass(frozen=True, eq=False)
class RequestStream:
    """The sequence of request types arriving over the horizon.

    :param types: ``np.ndarray`` with shape (T,). Type index of each request, in arrival order.
    :param seed: Seed the stream was drawn with.
    """

    types: np.ndarray
    seed: int = -1

    def __post_init__(self):
        types = np.array(self.types, dtype=np.int64)
        types.flags.writeable = False
        object.__setattr__(self, "types", types)

    def __len__(self) -> int:
        return self.types.shape[0]

    def __repr__(self) -> str:
        return "RequestStream of length {} (seed {})".format(len(self), self.seed)

    def segment(self, start: int, stop: int) -> np.ndarray:
        return self.types[start:stop]

    def counts(self, n_types: int) -> np.ndarray:
        return np.bincount(self.types, minlength=n_types)


def sample_stream(inst: Instance, seed: int) -> RequestStream:
    """Draws ``inst.T`` i.i.d. request types by inverse CDF.

    The probabilities are renormalized before the cumulative sum so the last
    breakpoint is exactly one; uniform draws lie in [0, 1) hence zero-probability
    types are never drawn.
    """
    cdf = np.cumsum(inst.probabilities)
    cdf[-1] = 1.0
    u = make_rng(seed, STREAM_KEY).random(inst.T)
    types = np.searchsorted(cdf, u, side="right")
    np.minimum(types, inst.n_types - 1, out=types)
    return RequestStream(types=types, seed=seed)


def stream_from_types(types: Sequence[int], inst: Instance = None) -> RequestStream:
    """Wraps an explicit type sequence, checking it against ``inst`` when given."""
    stream = RequestStream(types=types)
    if inst is not None:
        if len(stream) != inst.T:
            raise ValueError(
                "Stream has {} requests but the horizon is T={}".format(
                    len(stream), inst.T
                )
            )
        if len(stream) and (stream.types.min() < 0 or stream.types.max() >= inst.n_types):
            raise ValueError("Stream holds type indices outside [0, {})".format(inst.n_types))
    return stream
