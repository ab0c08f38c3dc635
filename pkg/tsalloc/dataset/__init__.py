from tsalloc.dataset.instance import (
    Instance,
    ValidationReport,
    validate_instance,
    as_instance,
    NULL_CHANNEL,
)
from tsalloc.dataset.stream import RequestStream, sample_stream, stream_from_types, make_rng
from tsalloc.dataset.outcome import AllocationOutcome, evaluate_outcome
from tsalloc.dataset.synthetic import (
    GeneratedInstance,
    RandomInstanceGenerator,
    single_channel_instance,
    tight_two_channel_instance,
)

__all__ = [
    "Instance",
    "ValidationReport",
    "validate_instance",
    "as_instance",
    "NULL_CHANNEL",
    "RequestStream",
    "sample_stream",
    "stream_from_types",
    "make_rng",
    "AllocationOutcome",
    "evaluate_outcome",
    "GeneratedInstance",
    "RandomInstanceGenerator",
    "single_channel_instance",
    "tight_two_channel_instance",
]
