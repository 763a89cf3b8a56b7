"""Vertex representation of the admissible-triple polytope."""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator

RationalPoint = tuple[Fraction, ...]


class PolytopeV(BaseModel):
    """Convex hull of normalized nonzero Kronecker triples.

    Points are flattened as ``rA ++ rB ++ rAB`` in exact rationals. The hull is
    an inner approximation labelled by the box count it was built from.

    Attributes:
        ambient_dim: m + n + mn_bound.
        points: Vertices, each block weakly decreasing and summing to 1.
        bounds: (m, n, mn_bound).
        source_max_boxes: K the vertices were collected up to.
        affine_dim: Affine dimension t of the vertex set.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient_dim: int = Field(..., ge=3)
    points: tuple[RationalPoint, ...] = Field(..., min_length=1)
    bounds: tuple[int, int, int]
    source_max_boxes: int = Field(..., ge=1)
    affine_dim: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_points(self) -> PolytopeV:
        m, n, mnb = self.bounds
        if self.ambient_dim != m + n + mnb:
            raise ValueError(f"ambient_dim {self.ambient_dim} does not match bounds {self.bounds}")
        for p in self.points:
            if len(p) != self.ambient_dim:
                raise ValueError(f"point of length {len(p)} in ambient dimension {self.ambient_dim}")
            for block in split_blocks(p, self.bounds):
                if sum(block, Fraction(0)) != 1:
                    raise ValueError(f"block {block} does not sum to 1")
                if any(a < b for a, b in zip(block, block[1:])):
                    raise ValueError(f"block {block} is not weakly decreasing")
        return self

    @property
    def vertex_count(self) -> int:
        return len(self.points)


class CaratheodoryCert(BaseModel):
    """A point written as a convex combination of few vertices.

    Attributes:
        generators: Normalized triples (flattened) used in the combination.
        coefficients: Nonnegative rationals summing to exactly 1.
        boxes: Per generator, the smallest box count k with a nonzero triple
            whose normalized rows are that generator. Empty when unknown.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    generators: tuple[RationalPoint, ...] = Field(..., min_length=1)
    coefficients: tuple[Fraction, ...] = Field(..., min_length=1)
    boxes: tuple[int, ...] = ()

    @model_validator(mode="after")
    def check_weights(self) -> CaratheodoryCert:
        if len(self.generators) != len(self.coefficients):
            raise ValueError("one coefficient per generator required")
        if self.boxes and len(self.boxes) != len(self.generators):
            raise ValueError("one box count per generator required")
        if any(k < 1 for k in self.boxes):
            raise ValueError("box counts must be positive")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be nonnegative")
        if sum(self.coefficients, Fraction(0)) != 1:
            raise ValueError("coefficients must sum to exactly 1")
        return self

    def reconstruct(self) -> RationalPoint:
        """Evaluate the combination exactly."""
        dim = len(self.generators[0])
        return tuple(
            sum((c * g[i] for c, g in zip(self.coefficients, self.generators)), Fraction(0))
            for i in range(dim)
        )


def split_blocks(point: tuple, bounds: tuple[int, int, int]) -> tuple[tuple, tuple, tuple]:
    """Split a flattened point into its (rA, rB, rAB) blocks."""
    m, n, _ = bounds
    return tuple(point[:m]), tuple(point[m:m + n]), tuple(point[m + n:])
