import json
import logging
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Dict, List, Optional, Union

from tsalloc.dataset.instance import Instance, as_instance, validate_instance
from tsalloc.dataset.synthetic import RandomInstanceGenerator

logger = logging.getLogger(__name__)

ALGORITHMS = ("ptilde", "algA", "algA1", "algA2", "offline-only")
FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Raised for an unusable experiment configuration."""


@dataclass
class ExperimentConfig:
    """Settings of one Monte Carlo experiment.

    Exactly one of ``instance`` (path or inline instance document) and
    ``generator`` (keyword arguments of :class:`RandomInstanceGenerator` plus an
    optional ``seed``) describes the instance.

    :param gamma_c: Constant ``c`` of the regime threshold ``c eps^2 / ln(K / eps)``.
    :param xi: Measure of feasibility handed to the staged algorithm. Default: the oracle value.
    :param gamma1: Overrides the oracle ``gamma1`` for the staged algorithms.
    :param gamma2: Overrides the oracle ``gamma2`` for the feasibility estimator.
    :param horizons: Horizons swept by ``bench``.
    :param epsilons: Error parameters swept by ``bench``.
    """

    instance: Optional[Union[str, Dict]] = None
    generator: Optional[Dict] = None
    algorithm: str = "algA1"
    epsilon: float = 0.1
    trials: int = 100
    seed: int = 0
    gamma_c: float = 1.0
    output: Optional[str] = None
    format: str = "csv"
    workers: int = 1
    xi: Optional[float] = None
    gamma1: Optional[float] = None
    gamma2: Optional[float] = None
    warm_start: bool = False
    horizons: List[int] = field(default_factory=list)
    epsilons: List[float] = field(default_factory=list)

    @classmethod
    def from_dict(cls, document: Dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(document) - known)
        if unknown:
            raise ConfigError("Unknown configuration keys {}".format(unknown))
        return cls(**document)

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path) as f:
                document = json.load(f)
        except (OSError, ValueError) as error:
            raise ConfigError("Cannot read configuration {}: {}".format(path, error))
        if not isinstance(document, dict):
            raise ConfigError("Configuration {} is not a JSON object".format(path))
        return cls.from_dict(document)

    def updated(self, **overrides) -> "ExperimentConfig":
        """Copy with every override that is not ``None`` applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict:
        return asdict(self)

    def validate(self) -> "ExperimentConfig":
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                "algorithm must be one of {}, got {}".format(ALGORITHMS, self.algorithm)
            )
        if not 0 < self.epsilon < 1:
            raise ConfigError("epsilon must lie in (0, 1), got {}".format(self.epsilon))
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError("trials must be a positive integer, got {}".format(self.trials))
        if self.seed < 0:
            raise ConfigError("seed must be non-negative, got {}".format(self.seed))
        if self.format not in FORMATS:
            raise ConfigError("format must be one of {}, got {}".format(FORMATS, self.format))
        if self.workers < 1:
            raise ConfigError("workers must be at least 1, got {}".format(self.workers))
        if self.gamma_c <= 0:
            raise ConfigError("gamma_c must be positive, got {}".format(self.gamma_c))
        if (self.instance is None) == (self.generator is None):
            raise ConfigError("Give exactly one of 'instance' and 'generator'")
        for name in ("gamma1", "gamma2"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError("{} must be positive, got {}".format(name, value))
        if any(not 0 < e < 1 for e in self.epsilons):
            raise ConfigError("bench epsilons must lie in (0, 1), got {}".format(self.epsilons))
        if any(T < 1 for T in self.horizons):
            raise ConfigError("bench horizons must be positive, got {}".format(self.horizons))
        return self

    def load_instance(self, T: int = None) -> Instance:
        """Builds and validates the configured instance.

        :param T: Horizon override: generated instances are drawn again at this
            horizon, file instances get bounds scaled linearly with it.
        """
        try:
            if self.generator is not None:
                params = dict(self.generator)
                seed = params.pop("seed", self.seed)
                if T is not None:
                    params["T"] = T
                inst = RandomInstanceGenerator(**params).generate(seed).instance
            else:
                inst = as_instance(self.instance)
                if T is not None and T != inst.T:
                    inst = inst.rescaled(T)
        except (OSError, ValueError, TypeError) as error:
            raise ConfigError("Cannot build the instance: {}".format(error))
        report = validate_instance(inst)
        if not report.ok:
            raise ConfigError("Invalid instance: {}".format("; ".join(report)))
        return inst
