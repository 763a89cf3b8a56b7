"""Approximating sequences of nonzero triples for a target spectral triple."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from numbers import Real

from kronspec.kronecker.src.coefficients import KronCache
from kronspec.kronecker.src.semigroup import enumerate_kron
from kronspec.partitions.src.young import l1_distance, normalize
from kronspec.shared.models import KronTriple, SpectralTriple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SequenceRow:
    """Closest nonzero triple of one size."""
    k: int
    triple: KronTriple
    distance: Real


def triple_distance(t: KronTriple, target: SpectralTriple) -> Real:
    """Largest L1 distance between a normalized row and the matching target spectrum."""
    return max(
        l1_distance(normalize(t.mu).weights, target.rA.probs),
        l1_distance(normalize(t.nu).weights, target.rB.probs),
        l1_distance(normalize(t.lam).weights, target.rAB.probs),
    )


def kron_sequence(
    target: SpectralTriple,
    k_list: Iterable[int],
    bounds: tuple[int, int, int] | None = None,
    cache: KronCache | None = None,
) -> list[SequenceRow]:
    """For each k, the nonzero triple whose normalized rows are closest to ``target``.

    Ties go to the first triple in canonical order. Bounds default to the
    target's dimensions.
    """
    bounds = bounds or target.dims
    rows = []
    for k in k_list:
        members = enumerate_kron(k, bounds, cache=cache).triples
        if not members:
            continue
        best = min(members, key=lambda t: triple_distance(t, target))
        rows.append(SequenceRow(k=k, triple=best, distance=triple_distance(best, target)))
        logger.debug(f"k={k}: closest triple {best} at distance {float(rows[-1].distance):.6g}")
    return rows
