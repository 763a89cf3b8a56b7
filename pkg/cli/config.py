"""Run configuration for the kron command line."""

from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator

from kronspec.shared.config import Settings


class Tolerances(BaseModel):
    """Numeric slacks, each strictly positive."""

    model_config = ConfigDict(frozen=True)

    normalization: float
    eig_clamp: float
    feasibility: float
    pinsker_slack: float
    bound_slack: float
    hull_distance: float

    @field_validator("*")
    @classmethod
    def ensure_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("tolerances must be > 0")
        return v


class RunConfig(BaseModel):
    """Settings merged with command-line overrides for one invocation.

    Attributes:
        bounds: Row bounds (m, n, mn_bound).
        max_boxes: Default K for polytope and generator runs.
        seed: Base seed for every stochastic step.
        threads: Worker threads for enumeration and witness restarts.
        cache_path: Optional character/coefficient cache file.
        out: Output file; standard output when unset.
        tolerances: Numeric slacks.
    """

    model_config = ConfigDict(frozen=True)

    bounds: tuple[int, int, int]
    max_boxes: int = Field(..., ge=1)
    seed: int
    threads: int = Field(..., ge=1)
    cache_path: Path | None = None
    out: Path | None = None
    tolerances: Tolerances

    @field_validator("bounds")
    @classmethod
    def check_bounds(cls, v: tuple[int, int, int]) -> tuple[int, int, int]:
        if min(v) < 1:
            raise ValueError(f"row bounds must be >= 1, got {v}")
        return v

    @property
    def m(self) -> int:
        return self.bounds[0]

    @property
    def n(self) -> int:
        return self.bounds[1]

    @classmethod
    def from_settings(
        cls,
        settings: Settings,
        *,
        m: int | None = None,
        n: int | None = None,
        mn_bound: int | None = None,
        seed: int | None = None,
        threads: int | None = None,
        cache_path: Path | None = None,
        out: Path | None = None,
        **tolerances: float | None,
    ) -> RunConfig:
        """Apply explicitly given overrides on top of ``settings``."""
        m = settings.bounds__m if m is None else m
        n = settings.bounds__n if n is None else n
        if mn_bound is None:
            # an explicit environment value wins unless m or n changed on the command line
            mn_bound = settings.bounds[2] if (m, n) == settings.bounds[:2] else m * n
        defaults = {
            "normalization": settings.tol__normalization,
            "eig_clamp": settings.tol__eig_clamp,
            "feasibility": settings.tol__feasibility,
            "pinsker_slack": settings.tol__pinsker_slack,
            "bound_slack": settings.tol__bound_slack,
            "hull_distance": settings.tol__hull_distance,
        }
        merged = {key: value if tolerances.get(key) is None else tolerances[key] for key, value in defaults.items()}
        return cls(
            bounds=(m, n, mn_bound),
            max_boxes=settings.run__max_boxes,
            seed=settings.run__seed if seed is None else seed,
            threads=settings.run__threads if threads is None else threads,
            cache_path=cache_path or settings.cache__path,
            out=out,
            tolerances=Tolerances(**merged),
        )
