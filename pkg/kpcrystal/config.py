"""
Runtime settings for kpcrystal.

Every setting is optional. Values come from the process environment, with
a `.env` file in the working directory loaded first (python-dotenv), and
can always be overridden by explicit keyword arguments or CLI flags.

    KPCRYSTAL_MAX_NODES     node cap for crystal-ball generation
    KPCRYSTAL_TIME_LIMIT_S  wall-clock cap (seconds) for ball generation
    KPCRYSTAL_SEARCH_CAP    visited-word cap for the semi-adaptedness search
    KPCRYSTAL_LOG_LEVEL     default CLI log level
"""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import find_dotenv, load_dotenv

from kpcrystal.errors import ConfigError


DEFAULT_MAX_NODES = 250_000
DEFAULT_TIME_LIMIT_S = 900.0
DEFAULT_SEARCH_CAP = 200_000
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """Resolved runtime caps and defaults."""
    max_nodes: int = DEFAULT_MAX_NODES
    time_limit_s: float = DEFAULT_TIME_LIMIT_S
    search_cap: int = DEFAULT_SEARCH_CAP
    log_level: str = DEFAULT_LOG_LEVEL


def _positive_int(name: str, default: int) -> int:
    """Positive integer from the environment, or the default when unset."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def _positive_float(name: str, default: float) -> float:
    """Positive number from the environment, or the default when unset."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{name} must be a number, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def _log_level(name: str, default: str) -> str:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    level = raw.strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"{name} is not a logging level: {raw!r}")
    return level


def load_settings() -> Settings:
    """
    Read settings from the environment (after loading `.env`).

    Returns:
        Settings with defaults for anything unset

    Raises:
        ConfigError: if a variable is set to an unparsable value
    """
    load_dotenv(find_dotenv(usecwd=True))
    return Settings(
        max_nodes=_positive_int("KPCRYSTAL_MAX_NODES", DEFAULT_MAX_NODES),
        time_limit_s=_positive_float("KPCRYSTAL_TIME_LIMIT_S", DEFAULT_TIME_LIMIT_S),
        search_cap=_positive_int("KPCRYSTAL_SEARCH_CAP", DEFAULT_SEARCH_CAP),
        log_level=_log_level("KPCRYSTAL_LOG_LEVEL", DEFAULT_LOG_LEVEL),
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings, read once."""
    return load_settings()
