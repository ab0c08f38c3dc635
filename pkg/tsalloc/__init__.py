# -*- coding: utf-8 -*-

"""Top-level package for tsalloc."""

__author__ = "tsalloc developers"
__version__ = "0.1.0"

# Set default logging handler to avoid logging with logging.lastResort logger.
import logging
from logging import NullHandler

from ._settings import get_verbosity, set_verbosity

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

# default to INFO level logging for the tsalloc package
set_verbosity(logging.INFO)

__all__ = ["get_verbosity", "set_verbosity"]
