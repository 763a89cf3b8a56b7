"""Shared pydantic models for kronspec modules."""

from kronspec.shared.models.kron import CharacterValue, CycleType, KronSet, KronTriple
from kronspec.shared.models.partition import (
    NormalizedPartition,
    Partition,
    PartitionLike,
    as_partition,
)
from kronspec.shared.models.polytope import CaratheodoryCert, PolytopeV, RationalPoint, split_blocks
from kronspec.shared.models.spectra import DensityOperator, PureState, SpectralTriple, Spectrum

__all__ = [
    "CaratheodoryCert",
    "CharacterValue",
    "CycleType",
    "DensityOperator",
    "KronSet",
    "KronTriple",
    "NormalizedPartition",
    "Partition",
    "PartitionLike",
    "PolytopeV",
    "PureState",
    "RationalPoint",
    "SpectralTriple",
    "Spectrum",
    "as_partition",
    "split_blocks",
]
