"""Symmetric-group class data and Kronecker triple models."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from kronspec.shared.models.partition import Partition


class CycleType(BaseModel):
    """A conjugacy class of S_k.

    Attributes:
        cycles: Cycle lengths of the class, as a partition of k.
        class_size: Number of permutations in the class.
    """

    model_config = ConfigDict(frozen=True)

    cycles: Partition
    class_size: int = Field(..., ge=1)


class CharacterValue(BaseModel):
    """One entry chi_lambda(class) of a character table."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: Partition = Field(..., alias="lambda")
    cycle_type: CycleType
    value: int


class KronTriple(BaseModel):
    """A triple of diagrams of equal size with its Kronecker coefficient.

    Attributes:
        mu: Diagram for subsystem A.
        nu: Diagram for subsystem B.
        lam: Diagram for the joint system (serialized as ``"lambda"``).
        g: The coefficient g_{mu nu lambda}.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    mu: Partition
    nu: Partition
    lam: Partition = Field(..., alias="lambda")
    g: int = Field(..., ge=0, description="Kronecker coefficient")

    @model_validator(mode="after")
    def check_sizes(self) -> KronTriple:
        if not (self.mu.size == self.nu.size == self.lam.size):
            raise ValueError(
                f"triple sizes differ: |mu|={self.mu.size}, |nu|={self.nu.size}, |lambda|={self.lam.size}"
            )
        return self

    @property
    def size(self) -> int:
        return self.mu.size

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        """Row tuples of (mu, nu, lambda), without the coefficient."""
        return (self.mu.rows, self.nu.rows, self.lam.rows)

    def sort_key(self) -> tuple:
        """Canonical order: by size, then lexicographically decreasing diagrams."""
        return (self.size,) + tuple(tuple(-r for r in rows) for rows in self.key)

    def __str__(self) -> str:
        return f"({self.mu}|{self.nu}|{self.lam}) g={self.g}"


class KronSet(BaseModel):
    """Nonzero Kronecker triples within row bounds, up to a box count.

    Attributes:
        row_bounds: (m, n, mn_bound) maximal row counts of (mu, nu, lambda).
        max_boxes: Largest size K enumerated.
        triples: Members with g > 0, in canonical order.
    """

    model_config = ConfigDict(frozen=True)

    row_bounds: tuple[int, int, int]
    max_boxes: int = Field(..., ge=0)
    triples: tuple[KronTriple, ...] = ()

    @field_validator("row_bounds")
    @classmethod
    def check_bounds(cls, v: tuple[int, int, int]) -> tuple[int, int, int]:
        if min(v) < 1:
            raise ValueError(f"row bounds must be >= 1, got {v}")
        return v

    @model_validator(mode="after")
    def check_members(self) -> KronSet:
        m, n, mnb = self.row_bounds
        for t in self.triples:
            if t.g <= 0:
                raise ValueError(f"member {t} has zero coefficient")
            if t.mu.length > m or t.nu.length > n or t.lam.length > mnb:
                raise ValueError(f"member {t} exceeds row bounds {self.row_bounds}")
            if t.size > self.max_boxes:
                raise ValueError(f"member {t} exceeds max_boxes {self.max_boxes}")
        return self

    def __len__(self) -> int:
        return len(self.triples)
