"""
Shared settings and configuration for newton_strata.
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from dotenv import find_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict


class DefaultMixin:
    """
    An Enum class that can specify a default member.

    The default is designated by assigning it to `_default`.
    """

    _default = None

    @classmethod
    def options(cls) -> List[str]:
        """Return a list of all member values."""
        return [member.value for member in cls]  # type: ignore[attr-defined]

    @classmethod
    def default(cls) -> str:
        """Return the value of the default member."""
        if cls._default is None:
            raise NotImplementedError(f"No `_default` member defined for {cls.__name__}")
        return str(cls._default.value)


# --- Enums for CLI choices ---


class OutputFormat(DefaultMixin, Enum):
    JSON = "json"
    DOT = "dot"
    TSV = "tsv"
    TEXT = "text"
    _default = JSON


class GroupFamily(DefaultMixin, Enum):
    GL = "GL"
    SL = "SL"
    PGL = "PGL"
    GSP = "GSp"
    SO = "SO"
    U = "U"
    _default = GL


class DefectMode(DefaultMixin, Enum):
    DIRECT = "direct"
    POSET = "poset"
    _default = POSET


SCHEMA_VERSION: int = 1

EXIT_OK: int = 0
EXIT_USAGE: int = 2
EXIT_CONSISTENCY: int = 3
EXIT_PRECISION: int = 4
EXIT_CONDITION_2: int = 5
EXIT_CONDITION_3: int = 6


class Settings(BaseSettings):
    """Runtime defaults, overridable from the environment or a .env file."""

    NEWTON_CACHE_DIR: Optional[Path] = None
    NEWTON_PRIME: int = 3
    NEWTON_PRECISION: int = 40
    NEWTON_DEGREE: int = 1
    NEWTON_WEYL_LIMIT: int = 10**6
    NEWTON_LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=find_dotenv(),
        env_file_encoding="utf-8",
        extra="ignore",
    )


# --- Global Settings Instance ---
settings = Settings()
