import logging
from typing import Dict, Optional, Union

import tqdm

logger = logging.getLogger(__name__)
tsalloc_logger = logging.getLogger("tsalloc")

default_formatter = logging.Formatter("[%(asctime)s] %(levelname)s - %(name)s | %(message)s")
# trial workers run in separate processes
worker_formatter = logging.Formatter(
    "[%(asctime)s - %(processName)s] %(levelname)s - %(name)s | %(message)s"
)


class DispatchingFormatter(logging.Formatter):
    """Formats a record with the formatter registered for the closest enclosing logger name."""

    def __init__(self, default: logging.Formatter, formatters: Optional[Dict[str, logging.Formatter]] = None):
        super().__init__()
        self._formatters = formatters if formatters is not None else {}
        self._default = default

    def formatter_for(self, name: str) -> logging.Formatter:
        while name:
            if name in self._formatters:
                return self._formatters[name]
            name = name.rpartition(".")[0]
        return self._default

    def format(self, record):
        return self.formatter_for(record.name).format(record)


class TqdmHandler(logging.StreamHandler):
    """Writes records through ``tqdm.write`` so they do not break running progress bars."""

    def emit(self, record):
        try:
            tqdm.tqdm.write(self.format(record), file=self.stream)
            self.flush()
        except Exception:
            self.handleError(record)


def get_verbosity() -> int:
    return tsalloc_logger.level


def set_verbosity(level: Union[str, int]):
    """Sets the level of the "tsalloc" logger and of its handler, adding the handler on first use."""
    tsalloc_logger.setLevel(level)
    handlers = [h for h in tsalloc_logger.handlers if isinstance(h, TqdmHandler)]
    for handler in handlers:
        handler.setLevel(level)
    if not handlers:
        handler = TqdmHandler()
        handler.setFormatter(
            DispatchingFormatter(default_formatter, {"tsalloc.experiment.runner": worker_formatter})
        )
        tsalloc_logger.addHandler(handler)
        logger.debug("Added progress-bar aware handler to the 'tsalloc' logger")
