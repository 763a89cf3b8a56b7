"""Young-diagram models shared by all modules.

A partition is stored as its nonzero row lengths. The textual form is a
comma-separated list such as ``"4,2,1"``; the empty diagram is ``"-"``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

EMPTY_TEXT = "-"


class Partition(BaseModel):
    """A Young diagram given by weakly decreasing positive row lengths.

    Attributes:
        rows: Row lengths, trailing zeros stripped on construction.
    """

    model_config = ConfigDict(frozen=True)

    rows: tuple[int, ...] = Field(
        default=(),
        description="Weakly decreasing positive row lengths",
        examples=[(4, 2, 1), (3,), ()],
    )

    @field_validator("rows", mode="before")
    @classmethod
    def strip_trailing_zeros(cls, v: Any) -> Any:
        if isinstance(v, Iterable) and not isinstance(v, (str, bytes)):
            rows = list(v)
            while rows and rows[-1] == 0:
                rows.pop()
            return tuple(rows)
        return v

    @field_validator("rows")
    @classmethod
    def check_shape(cls, rows: tuple[int, ...]) -> tuple[int, ...]:
        if any(r < 1 for r in rows):
            raise ValueError(f"rows must be positive integers, got {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows must be weakly decreasing, got {rows}")
        return rows

    @classmethod
    def of(cls, *rows: int) -> Partition:
        """Shorthand constructor: ``Partition.of(2, 1)``."""
        return cls(rows=rows)

    @property
    def size(self) -> int:
        """Number of boxes k."""
        return sum(self.rows)

    @property
    def length(self) -> int:
        """Number of rows d."""
        return len(self.rows)

    def __str__(self) -> str:
        return ",".join(str(r) for r in self.rows) if self.rows else EMPTY_TEXT

    def __repr__(self) -> str:
        return f"Partition({self})"


class NormalizedPartition(BaseModel):
    """A diagram divided by its size, as exact rationals.

    Attributes:
        weights: Weakly decreasing nonnegative rationals summing to exactly 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weights: tuple[Fraction, ...] = Field(..., description="Normalized row lengths")

    @field_validator("weights")
    @classmethod
    def check_distribution(cls, weights: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        if sum(weights, Fraction(0)) != 1:
            raise ValueError("weights must sum to exactly 1")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if any(a < b for a, b in zip(weights, weights[1:])):
            raise ValueError("weights must be weakly decreasing")
        return weights

    def padded(self, length: int) -> tuple[Fraction, ...]:
        """Weights padded with zeros up to ``length`` entries."""
        return self.weights + (Fraction(0),) * (length - len(self.weights))

    def __str__(self) -> str:
        return ",".join(str(w) for w in self.weights)


PartitionLike = Partition | Sequence[int] | str


def as_partition(value: PartitionLike) -> Partition:
    """Coerce a partition, a row sequence or partition text into a Partition."""
    if isinstance(value, Partition):
        return value
    if isinstance(value, str):
        # local import keeps the models package free of module dependencies
        from kronspec.partitions.src.young import parse_partition

        return parse_partition(value)
    return Partition(rows=tuple(value))
