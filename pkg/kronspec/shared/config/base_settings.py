"""Base configuration for all kronspec modules.

Settings are flat, double-underscore grouped fields read from ``KRON_``
environment variables, e.g. ``KRON_TOL__FEASIBILITY=1e-8``.
"""

import logging
from enum import Enum
from functools import lru_cache
from pathlib import Path

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogLevel(str, Enum):
    """Log level enumeration for consistent logging configuration."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseSettings):
    """Flat settings structure for environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="KRON_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: LogLevel = Field(default=LogLevel.WARNING, description="Logging level")

    # Tolerances - maps to KRON_TOL__SPECTRUM_SUM, etc.
    tol__spectrum_sum: float = Field(default=1e-12, description="Spectrum normalization slack")
    tol__normalization: float = Field(default=1e-10, description="Schur-Weyl completeness slack")
    tol__hermitian: float = Field(default=1e-12, description="Hermiticity slack for density operators")
    tol__psd: float = Field(default=1e-10, description="Most negative admissible eigenvalue (negated)")
    tol__eig_clamp: float = Field(default=1e-10, description="Eigenvalue round-off clamping threshold")
    tol__feasibility: float = Field(default=1e-9, description="Floating LP feasibility slack")
    tol__pinsker_slack: float = Field(default=1e-12, description="Slack for the Pinsker check")
    tol__bound_slack: float = Field(default=1e-10, description="Slack for the estimation bound check")
    tol__hull_distance: float = Field(default=0.02, description="Accepted L1 distance of sampled triples")

    # Run settings - maps to KRON_RUN__SEED, etc.
    run__seed: int = Field(default=0)
    run__threads: int = Field(default=1, ge=1)
    run__max_boxes: int = Field(default=12, ge=1)

    # Bipartite row bounds - maps to KRON_BOUNDS__M, etc.
    bounds__m: int = Field(default=2, ge=1)
    bounds__n: int = Field(default=2, ge=1)
    bounds__mn: int | None = Field(default=None, ge=1, description="Row bound for lambda, defaults to m*n")

    # Cache
    cache__path: Path | None = Field(default=None)

    # Estimation / witness search
    estimate__rate_constant: float = Field(default=2.0, description="c in the c/sqrt(k) rate check")
    witness__restarts: int = Field(default=200, ge=1)
    witness__iterations: int = Field(default=400, ge=1)

    @field_validator(
        "tol__spectrum_sum",
        "tol__normalization",
        "tol__hermitian",
        "tol__psd",
        "tol__eig_clamp",
        "tol__feasibility",
        "tol__pinsker_slack",
        "tol__bound_slack",
        "tol__hull_distance",
        "estimate__rate_constant",
    )
    @classmethod
    def ensure_positive(cls, v: float) -> float:
        """Tolerances must be strictly positive."""
        if v <= 0:
            raise ValueError("tolerances must be > 0")
        return v

    @model_validator(mode="after")
    def fill_mn_bound(self) -> "Settings":
        if self.bounds__mn is None:
            self.bounds__mn = self.bounds__m * self.bounds__n
        return self

    @property
    def bounds(self) -> tuple[int, int, int]:
        """Row bounds (m, n, mn_bound) for Kronecker triples."""
        return (self.bounds__m, self.bounds__n, self.bounds__mn or self.bounds__m * self.bounds__n)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def reload_settings() -> Settings:
    """Drop the cached settings and read the environment again.

    Returns:
        The newly loaded settings instance
    """
    get_settings.cache_clear()
    return get_settings()


def configure_logging(level: LogLevel | str | None = None) -> None:
    """Configure the root logger once for command-line entry points.

    Args:
        level: Explicit level; falls back to ``Settings.log_level``
    """
    if level is None:
        level = get_settings().log_level
    name = level.value if isinstance(level, LogLevel) else str(level).upper()
    logging.basicConfig(level=getattr(logging, name), format=LOG_FORMAT, force=True)
