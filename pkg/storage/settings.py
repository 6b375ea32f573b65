"""
Runtime configuration from environment variables (and an optional .env file).

Configuration (environment variables):
    TROPREP_GROUP_ORDER_CAP: largest group order accepted (default 64, at most 64)
    TROPREP_SUBSET_CAP: largest C(n, d) universe for orbit partitions (default 250000)
    TROPREP_ORBIT_CAP: largest orbit count for naive enumeration (default 24)
    TROPREP_WORKERS: default process count for parallel search (default 1)
    TROPREP_LOG_LEVEL: CLI logging level (default WARNING)
"""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from models.errors import ConfigurationError
from models.orbit import MAX_WORD_BITS

# Variables already set in the environment take precedence over .env
load_dotenv(override=False)

DEFAULT_GROUP_ORDER_CAP = MAX_WORD_BITS
DEFAULT_SUBSET_CAP = 250_000
DEFAULT_ORBIT_CAP = 24
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _positive_int(variable: str, default: int, ceiling: int = None) -> int:
    raw = os.getenv(variable)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ConfigurationError(f"{variable} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError(f"{variable} must be at least 1, got {value}")
    if ceiling is not None and value > ceiling:
        raise ConfigurationError(f"{variable} must be at most {ceiling}, got {value}")
    return value


def get_group_order_cap() -> int:
    """Largest group order the constructors accept; bounded by the 64-bit subset masks"""
    return _positive_int("TROPREP_GROUP_ORDER_CAP", DEFAULT_GROUP_ORDER_CAP, MAX_WORD_BITS)


def get_subset_cap() -> int:
    return _positive_int("TROPREP_SUBSET_CAP", DEFAULT_SUBSET_CAP)


def get_orbit_cap() -> int:
    return _positive_int("TROPREP_ORBIT_CAP", DEFAULT_ORBIT_CAP)


def get_workers() -> int:
    return _positive_int("TROPREP_WORKERS", DEFAULT_WORKERS)


def get_log_level() -> int:
    """Logging level for the CLI as a logging module constant"""
    raw = (os.getenv("TROPREP_LOG_LEVEL") or DEFAULT_LOG_LEVEL).strip().upper()
    if raw not in _LOG_LEVELS:
        raise ConfigurationError(f"TROPREP_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, got {raw!r}")
    return getattr(logging, raw)


@dataclass(frozen=True)
class Settings:
    group_order_cap: int
    subset_cap: int
    orbit_cap: int
    workers: int
    log_level: int


def get_settings() -> Settings:
    """Snapshot of every setting, read from the environment now"""
    return Settings(
        group_order_cap=get_group_order_cap(),
        subset_cap=get_subset_cap(),
        orbit_cap=get_orbit_cap(),
        workers=get_workers(),
        log_level=get_log_level(),
    )
