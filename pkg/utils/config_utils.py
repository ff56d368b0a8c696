#!/usr/bin/env python3
"""
Configuration and logging utilities for the symmetric product engine.
"""

import os
import sys
import logging
from typing import Dict, Any

from utils.errors import ConfigurationError


FORMATS = ("text", "table-doc")


def setup_logging(debug: bool = False) -> logging.Logger:
    """
    Configure logging for the application.

    Diagnostics go to stderr so that computed tables own stdout.

    Args:
        debug: If True, sets log level to DEBUG; otherwise INFO

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(__name__)
    level = logging.DEBUG if debug else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )
    return logger


def _int_setting(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigurationError(f"{name} must be at least {minimum}, got {value}")
    return value


def load_configuration() -> Dict[str, Any]:
    """
    Load and validate all configuration from environment variables.

    Returns:
        Dict with 'debug', 'max_n', 'workers' and 'default_format'

    Raises:
        ConfigurationError: If a variable holds an invalid value
    """
    # Check if debug mode is enabled
    debug_flag = os.getenv("DEBUG", "False").lower() in ('true', '1', 'yes')

    # Cap on the truncation degree accepted from the command line
    max_n = _int_setting("SYMPROD_MAX_N", 64, 0)

    # Worker threads for per-degree evaluation of the partition-sum oracle
    workers = _int_setting("SYMPROD_WORKERS", 1, 1)

    default_format = os.getenv("SYMPROD_DEFAULT_FORMAT", "text").strip() or "text"
    if default_format not in FORMATS:
        raise ConfigurationError(
            f"SYMPROD_DEFAULT_FORMAT must be one of {', '.join(FORMATS)}, got {default_format!r}"
        )

    config = {
        'debug': debug_flag,
        'max_n': max_n,
        'workers': workers,
        'default_format': default_format,
    }

    return config
