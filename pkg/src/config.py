"""
config.py — Environment configuration

Reads optional settings from a .env file at the project root and from the
process environment. Every setting has a default, so no .env is required.

  ZEROWEIGHT_RANK_CAP           max rank for chamber enumeration / fitting (4)
  ZEROWEIGHT_WEYL_CAP           max Weyl group order to enumerate (1000000)
  ZEROWEIGHT_SEARCH_RADIUS      initial z-grid radius for sampling (8)
  ZEROWEIGHT_SEARCH_RADIUS_CAP  radius doubling stops here (128)
  ZEROWEIGHT_LOG_LEVEL          CLI log level (INFO)

Usage (as library):
    from config import get_settings
    cap = get_settings().rank_cap

Created: 2026-10-02
"""

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).parent.parent

load_dotenv(PROJECT_ROOT / '.env', override=False)


@dataclass(frozen=True)
class Settings:
    rank_cap: int = 4
    weyl_cap: int = 1_000_000
    search_radius: int = 8
    search_radius_cap: int = 128
    log_level: str = "INFO"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings from the environment, read once per process."""
    return Settings(
        rank_cap=_env_int("ZEROWEIGHT_RANK_CAP", Settings.rank_cap),
        weyl_cap=_env_int("ZEROWEIGHT_WEYL_CAP", Settings.weyl_cap),
        search_radius=_env_int("ZEROWEIGHT_SEARCH_RADIUS", Settings.search_radius),
        search_radius_cap=_env_int(
            "ZEROWEIGHT_SEARCH_RADIUS_CAP", Settings.search_radius_cap
        ),
        log_level=os.environ.get("ZEROWEIGHT_LOG_LEVEL", Settings.log_level).upper(),
    )
