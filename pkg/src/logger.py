import logging
import os
from typing import Dict

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL_ENV_VAR = "INTERVAL_EM_LOG_LEVEL"

_loggers: Dict[str, logging.Logger] = {}


def get_logger(name: str) -> logging.Logger:
    """
    Returns a logger with a single stream handler attached.

    The level is read from the INTERVAL_EM_LOG_LEVEL environment variable and
    defaults to WARNING so library use stays quiet.

    Args:
        name (str): Name of the logger, usually the module's __name__.

    Returns:
        logging.Logger: The configured logger.
    """
    if name in _loggers:
        return _loggers[name]
    logger = logging.getLogger(name)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.propagate = False
    logger.setLevel(os.environ.get(LOG_LEVEL_ENV_VAR, "WARNING").upper())
    _loggers[name] = logger
    return logger


def set_log_level(level: str) -> None:
    """Sets the level of every logger handed out by get_logger, and of those created later."""
    os.environ[LOG_LEVEL_ENV_VAR] = level.upper()
    for logger in _loggers.values():
        logger.setLevel(level.upper())
