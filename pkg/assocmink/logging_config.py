"""
Logging configuration for assocmink.
Reports go to stdout, so log records are written to stderr.
"""

import logging
import os
import sys
from typing import Dict, Optional

PACKAGE_LOGGERS = (
    "polygon",
    "intervals",
    "zvalues",
    "minkowski",
    "oracle",
    "services",
    "repository",
    "application",
    "cli",
)


def setup_logging(
    log_level: str = "WARNING", log_file: Optional[str] = None
) -> Dict[str, logging.Logger]:
    """Setup logging configuration for assocmink."""

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    level = getattr(logging, log_level.upper())

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    loggers = {f"assocmink.{name}": get_logger(name) for name in PACKAGE_LOGGERS}
    for logger in loggers.values():
        logger.setLevel(level)

    logging.debug("Logging configured at %s", log_level.upper())
    return loggers


def get_logger(name: str) -> logging.Logger:
    """Get logger for specific module."""
    return logging.getLogger(f"assocmink.{name}")


def setup_from_env(log_level: Optional[str] = None) -> Dict[str, logging.Logger]:
    """Configure from LOG_LEVEL and LOG_FILE, an explicit level wins."""
    level = log_level or os.getenv("LOG_LEVEL", "WARNING")
    return setup_logging(level, os.getenv("LOG_FILE"))
