import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.dataset.stream import RequestStream


@dataclass(frozen=True, eq=False)
class AllocationOutcome:
    """Realized consumption and revenue of a full decision sequence."""

    decisions: np.ndarray
    consumption: np.ndarray
    revenue: float
    lower_ok: np.ndarray
    upper_ok: np.ndarray

    @property
    def feasible(self) -> bool:
        return bool(np.all(self.lower_ok) and np.all(self.upper_ok))

    @property
    def n_served(self) -> int:
        return int(np.count_nonzero(self.decisions))


def evaluate_outcome(
    inst: Instance,
    stream: RequestStream,
    decisions: Union[Sequence[int], np.ndarray],
) -> AllocationOutcome:
    """Sums consumption and revenue of ``decisions`` on ``stream``.

    Sums are correctly rounded (``math.fsum``), so they do not depend on
    summation order.
    """
    decisions = np.array(decisions, dtype=np.int64)
    if decisions.ndim != 1 or decisions.shape[0] != inst.T:
        raise ValueError(
            "decision length ≠ T: got {} decisions for T={}".format(
                decisions.shape[0] if decisions.ndim else 0, inst.T
            )
        )
    if len(stream) != inst.T:
        raise ValueError(
            "Stream length {} does not match T={}".format(len(stream), inst.T)
        )
    if decisions.size and (decisions.min() < 0 or decisions.max() >= inst.n_channels):
        raise ValueError(
            "Decisions hold channel indices outside [0, {})".format(inst.n_channels)
        )
    types = stream.types
    used = inst.a[decisions, types, :]
    consumption = np.array(
        [math.fsum(used[:, k]) for k in range(inst.n_resources)], dtype=np.float64
    )
    revenue = math.fsum(inst.w[decisions, types])
    decisions.flags.writeable = False
    return AllocationOutcome(
        decisions=decisions,
        consumption=consumption,
        revenue=revenue,
        lower_ok=consumption >= inst.L,
        upper_ok=consumption <= inst.U,
    )
