"""Spectral accuracy of nonzero triples against bipartite states.

Nonzero triples with k boxes and spectra of m x n states approximate each
other within converse_delta(m, n, k) = 3mn * sqrt(ln k / k), per component in L1:

    witness:  a triple's normalized rows are the spectra of some state, up to delta
    sequence: a state's spectra are the normalized rows of some triple, up to delta

Tighter constants c with error <= c * sqrt(ln k / k) are reported, not asserted.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

from kronspec.kronecker.src.coefficients import KronCache
from kronspec.kronecker.src.sequence import kron_sequence
from kronspec.partitions.src.young import l1_distance, normalize
from kronspec.shared.errors import FalsificationError
from kronspec.shared.models import KronTriple, SpectralTriple, Spectrum
from kronspec.spectra.src.estimation import converse_delta
from kronspec.spectra.src.witness import find_witness_state

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ApproximationRow:
    """Per-component L1 errors at one box count against the allowed delta."""
    k: int
    errors: tuple[float, float, float]
    delta: float

    @property
    def within(self) -> bool:
        return max(self.errors) <= self.delta

    @property
    def fitted_constant(self) -> float:
        """Largest error divided by sqrt(ln k / k); nan for k <= 1."""
        if self.k <= 1:
            return math.nan
        return max(self.errors) / math.sqrt(math.log(self.k) / self.k)


def normalized_triple(t: KronTriple, dims: tuple[int, int, int]) -> SpectralTriple:
    """Normalized rows of ``t`` as exact spectra of lengths ``dims``."""
    m, n, d = dims
    return SpectralTriple(
        rA=Spectrum(probs=normalize(t.mu).padded(m)),
        rB=Spectrum(probs=normalize(t.nu).padded(n)),
        rAB=Spectrum(probs=normalize(t.lam).padded(d)),
    )


def component_errors(p: SpectralTriple, q: SpectralTriple) -> tuple[float, float, float]:
    return (
        float(l1_distance(p.rA.probs, q.rA.probs)),
        float(l1_distance(p.rB.probs, q.rB.probs)),
        float(l1_distance(p.rAB.probs, q.rAB.probs)),
    )


def fitted_constant(rows: Iterable[ApproximationRow]) -> float:
    """Smallest c covering every row with k > 1; nan when there is none."""
    constants = [row.fitted_constant for row in rows if row.k > 1]
    return max(constants) if constants else math.nan


def witness_approximation(
    t: KronTriple,
    m: int,
    n: int,
    seed: int | None = None,
    restarts: int | None = None,
    iterations: int | None = None,
    threads: int | None = None,
    strict: bool = False,
) -> ApproximationRow:
    """Search a state for the normalized rows of ``t`` and compare its spectra.

    Raises:
        FalsificationError: If ``strict`` and some component misses by more than delta.
    """
    target = normalized_triple(t, (m, n, m * n))
    result = find_witness_state(target, m, n, iterations=iterations, seed=seed, restarts=restarts, threads=threads)
    row = ApproximationRow(k=t.size, errors=component_errors(result.triple, target), delta=converse_delta(m, n, t.size))
    logger.debug(f"Witness for {t}: errors {row.errors}, delta {row.delta:.6g}")
    if strict and not row.within:
        raise FalsificationError(
            "no state reaches a nonzero triple within delta",
            {"triple": [str(t.mu), str(t.nu), str(t.lam)], "errors": list(row.errors), "delta": row.delta},
        )
    return row


def sequence_approximation(
    target: SpectralTriple,
    k_list: Iterable[int],
    bounds: tuple[int, int, int] | None = None,
    cache: KronCache | None = None,
    strict: bool = False,
) -> list[ApproximationRow]:
    """Compare ``target`` with the closest nonzero triple of each size in ``k_list``.

    Raises:
        FalsificationError: If ``strict`` and some size misses by more than delta.
    """
    m, n, _ = target.dims
    rows = []
    for closest in kron_sequence(target, k_list, bounds=bounds, cache=cache):
        row = ApproximationRow(
            k=closest.k,
            errors=component_errors(normalized_triple(closest.triple, target.dims), target),
            delta=converse_delta(m, n, closest.k),
        )
        if strict and not row.within:
            raise FalsificationError(
                "spectra farther than delta from every nonzero triple",
                {"target": [float(x) for x in target.flatten()], "k": row.k,
                 "errors": list(row.errors), "delta": row.delta},
            )
        rows.append(row)
    return rows
