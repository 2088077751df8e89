# lorentzkit/logger.py

import sys

from loguru import logger

from .config import LOG_FILE, LOG_LEVEL

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {name} | {message}"

# stdout carries reports, so every sink here is stderr or a file.
logger.remove()
logger.add(sys.stderr, level=LOG_LEVEL, format=LOG_FORMAT)
if LOG_FILE:
    logger.add(LOG_FILE, level=LOG_LEVEL, format=LOG_FORMAT)

__all__ = ["logger"]
