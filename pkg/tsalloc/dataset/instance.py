import json
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

NULL_CHANNEL = 0
NULL_CHANNEL_NAME = "none"
PROBABILITY_TOLERANCE = 1e-9


def _frozen(values, dtype=np.float64) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Instance:
    """Data of a two-sided online allocation problem.

    Channel 0 is always the no-service channel: it earns nothing and consumes
    nothing, so every algorithm may route a request there.

    :param p: ``np.ndarray`` with shape (n_types,). Arrival probability of each request type.
    :param w: ``np.ndarray`` with shape (n_channels, n_types). Revenue of serving a type on a channel.
    :param a: ``np.ndarray`` with shape (n_channels, n_types, n_resources). Resource consumption.
    :param L: ``np.ndarray`` with shape (n_resources,). Minimum total consumption per resource.
    :param U: ``np.ndarray`` with shape (n_resources,). Capacity per resource.
    :param T: Number of requests in the horizon.
    :param channels: Channel names, index 0 being the no-service channel.
    """

    p: np.ndarray
    w: np.ndarray
    a: np.ndarray
    L: np.ndarray
    U: np.ndarray
    T: int
    channels: List[str] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "p", _frozen(self.p))
        object.__setattr__(self, "w", _frozen(self.w))
        object.__setattr__(self, "a", _frozen(self.a))
        object.__setattr__(self, "L", _frozen(self.L))
        object.__setattr__(self, "U", _frozen(self.U))
        object.__setattr__(self, "T", int(self.T))
        if self.channels is None:
            names = [NULL_CHANNEL_NAME] + [
                "c%d" % i for i in range(1, self.w.shape[0] if self.w.ndim else 1)
            ]
        else:
            names = [str(name) for name in self.channels]
        object.__setattr__(self, "channels", tuple(names))

    def __repr__(self) -> str:
        return "Instance with n_channels x n_types x n_resources = {} x {} x {}, T = {}".format(
            self.n_channels, self.n_types, self.n_resources, self.T
        )

    @property
    def n_channels(self) -> int:
        return self.w.shape[0]

    @property
    def n_types(self) -> int:
        return self.p.shape[0]

    @property
    def n_resources(self) -> int:
        return self.L.shape[0]

    @property
    def K(self) -> int:
        return self.n_resources

    @property
    def J(self) -> int:
        return self.n_types

    @property
    def a_bar(self) -> np.ndarray:
        """Largest per-request consumption of each resource over channels and types."""
        return self.a.max(axis=(0, 1))

    @property
    def w_bar(self) -> float:
        """Largest per-request revenue over channels and types."""
        return float(self.w.max())

    @property
    def probabilities(self) -> np.ndarray:
        """Arrival probabilities renormalized to sum to one exactly."""
        return self.p / math.fsum(self.p)

    @classmethod
    def with_null_channel(
        cls,
        p: Sequence[float],
        w: Sequence[Sequence[float]],
        a: Sequence[Sequence[Sequence[float]]],
        L: Sequence[float],
        U: Sequence[float],
        T: int,
        channels: Optional[Sequence[str]] = None,
    ) -> "Instance":
        """Builds an instance from the serving channels only, prepending the no-service channel.

        :param w: revenues with shape (n_serving_channels, n_types).
        :param a: consumptions with shape (n_serving_channels, n_types, n_resources).
        """
        w = np.asarray(w, dtype=np.float64)
        a = np.asarray(a, dtype=np.float64)
        w = np.concatenate([np.zeros((1,) + w.shape[1:]), w])
        a = np.concatenate([np.zeros((1,) + a.shape[1:]), a])
        if channels is not None:
            channels = [NULL_CHANNEL_NAME] + list(channels)
        return cls(p=p, w=w, a=a, L=L, U=U, T=T, channels=channels)

    def rescaled(self, T: int) -> "Instance":
        """Returns the instance with horizon ``T`` and bounds grown linearly with it."""
        ratio = T / self.T
        return Instance(
            p=self.p,
            w=self.w,
            a=self.a,
            L=self.L * ratio,
            U=self.U * ratio,
            T=T,
            channels=self.channels,
        )

    def to_dict(self) -> Dict:
        return {
            "K": self.n_resources,
            "J": self.n_types,
            "T": self.T,
            "channels": list(self.channels),
            "p": self.p.tolist(),
            "w": self.w.tolist(),
            "a": self.a.tolist(),
            "L": self.L.tolist(),
            "U": self.U.tolist(),
        }

    @classmethod
    def from_dict(cls, document: Dict) -> "Instance":
        """Reads the JSON instance document. ``a_bar`` and ``w_bar`` are always recomputed."""
        missing = [
            key for key in ("T", "p", "w", "a", "L", "U") if key not in document
        ]
        if missing:
            raise ValueError("Instance document lacks keys {}".format(missing))
        inst = cls(
            p=document["p"],
            w=document["w"],
            a=document["a"],
            L=document["L"],
            U=document["U"],
            T=document["T"],
            channels=document.get("channels"),
        )
        for key, value in (("K", inst.n_resources), ("J", inst.n_types)):
            if key in document and int(document[key]) != value:
                raise ValueError(
                    "Instance document declares {}={} but arrays imply {}".format(
                        key, document[key], value
                    )
                )
        return inst

    def save(self, path: str):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
        logger.info("Instance saved to {}".format(path))

    @classmethod
    def load(cls, path: str) -> "Instance":
        with open(path) as f:
            return cls.from_dict(json.load(f))


@dataclass
class ValidationReport:
    """Every invariant an instance violates; empty means the instance is usable."""

    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __len__(self) -> int:
        return len(self.problems)

    def __iter__(self) -> Iterator[str]:
        return iter(self.problems)

    def __contains__(self, message: str) -> bool:
        return any(message in problem for problem in self.problems)

    def add(self, message: str):
        self.problems.append(message)


def validate_instance(inst: Instance) -> ValidationReport:
    """Lists every violated invariant of ``inst``.

    Shape problems stop the check early since the remaining checks index the arrays.
    """
    report = ValidationReport()
    p, w, a, L, U = inst.p, inst.w, inst.a, inst.L, inst.U
    if p.ndim != 1 or w.ndim != 2 or a.ndim != 3 or L.ndim != 1 or U.ndim != 1:
        report.add("arrays have wrong dimensions")
        return report
    n_channels, n_types = w.shape
    if a.shape[:2] != (n_channels, n_types) or p.shape[0] != n_types:
        report.add("w, a and p disagree on channels or types")
        return report
    if L.shape != U.shape or a.shape[2] != L.shape[0]:
        report.add("a, L and U disagree on resources")
        return report
    if n_channels < 1 or n_types < 1:
        report.add("instance needs at least one channel and one type")
        return report
    if len(inst.channels) != n_channels:
        report.add("channel names do not match the number of channels")
    if inst.T < 1:
        report.add("horizon T must be at least 1")

    for name, values in (("p", p), ("w", w), ("a", a), ("L", L), ("U", U)):
        if not np.all(np.isfinite(values)):
            report.add("{} has non-finite entries".format(name))
        elif np.any(values < 0):
            report.add("{} has negative entries".format(name))
    if np.all(np.isfinite(p)) and abs(math.fsum(p) - 1.0) > PROBABILITY_TOLERANCE:
        report.add("probabilities do not sum to 1 (sum = {!r})".format(math.fsum(p)))

    if np.any(w[NULL_CHANNEL] != 0) or np.any(a[NULL_CHANNEL] != 0):
        report.add("channel 0 must have zero revenue and zero consumption")
    for k in range(L.shape[0]):
        if L[k] > U[k]:
            report.add("L exceeds U for k={}".format(k))
    if a.size and np.all(np.isfinite(a)):
        for k in np.flatnonzero(inst.a_bar <= 0):
            report.add("resource k={} is never consumed (a_bar is zero)".format(k))
    if w.size and np.all(np.isfinite(w)) and inst.w_bar <= 0:
        report.add("all revenues are zero (w_bar is zero)")

    for problem in report:
        logger.debug("Invalid instance: {}".format(problem))
    return report


def as_instance(source: Union[Instance, Dict, str]) -> Instance:
    """Accepts an instance, an instance document or a path to one."""
    if isinstance(source, Instance):
        return source
    if isinstance(source, dict):
        return Instance.from_dict(source)
    return Instance.load(source)
