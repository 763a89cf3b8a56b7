"""The semigroup of nonzero Kronecker triples.

Enumeration within row bounds, closure and stability checks, bounded-degree
generator extraction and the entropic sanity check on normalized rows.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from scipy.stats import entropy

from kronspec.kronecker.src.coefficients import KronCache, kron_triple, kronecker_coefficient
from kronspec.partitions.src.young import add_rowwise, enumerate_partitions, scale, subtract_rowwise
from kronspec.shared.config import get_settings
from kronspec.shared.errors import FalsificationError, InputError
from kronspec.shared.models import KronSet, KronTriple, Partition

logger = logging.getLogger(__name__)

Bounds = tuple[int, int, int]

ENTROPY_SLACK = 1e-12


def _resolve(bounds: Bounds | None, threads: int | None) -> tuple[Bounds, int]:
    settings = get_settings()
    bounds = bounds or settings.bounds
    if len(bounds) != 3 or min(bounds) < 1:
        raise InputError(f"row bounds must be three integers >= 1, got {bounds}")
    return tuple(bounds), max(1, threads or settings.run__threads)


def _nonzero_of_size(k: int, bounds: Bounds, threads: int, cache: KronCache | None) -> list[KronTriple]:
    m, n, mnb = bounds
    candidates = list(
        itertools.product(
            enumerate_partitions(k, m), enumerate_partitions(k, n), enumerate_partitions(k, mnb)
        )
    )

    def compute(triple: tuple[Partition, Partition, Partition]) -> KronTriple:
        return kron_triple(*triple, cache=cache)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            computed = list(pool.map(compute, candidates))
    else:
        computed = [compute(c) for c in candidates]
    found = [t for t in computed if t.g > 0]
    logger.debug(f"k={k}: {len(found)} of {len(candidates)} candidate triples are nonzero")
    return found


def enumerate_kron(
    k: int,
    bounds: Bounds | None = None,
    threads: int | None = None,
    cache: KronCache | None = None,
) -> KronSet:
    """All nonzero triples of size exactly ``k`` within row bounds.

    Args:
        k: Number of boxes; ``0`` yields an empty set
        bounds: (m, n, mn_bound); defaults to the configured bounds
        threads: Worker threads for the coefficient evaluations
        cache: Coefficient memo shared by the workers

    Returns:
        KronSet with ``max_boxes=k`` in canonical order.
    """
    if k < 0:
        raise InputError(f"k must be >= 0, got {k}")
    bounds, threads = _resolve(bounds, threads)
    triples = _nonzero_of_size(k, bounds, threads, cache) if k > 0 else []
    triples.sort(key=KronTriple.sort_key)
    return KronSet(row_bounds=bounds, max_boxes=k, triples=tuple(triples))


def enumerate_kron_upto(
    max_boxes: int,
    bounds: Bounds | None = None,
    threads: int | None = None,
    cache: KronCache | None = None,
) -> KronSet:
    """All nonzero triples with 1 <= k <= ``max_boxes``."""
    if max_boxes < 0:
        raise InputError(f"max_boxes must be >= 0, got {max_boxes}")
    bounds, threads = _resolve(bounds, threads)
    triples: list[KronTriple] = []
    for k in range(1, max_boxes + 1):
        triples.extend(_nonzero_of_size(k, bounds, threads, cache))
    triples.sort(key=KronTriple.sort_key)
    logger.info(f"Enumerated {len(triples)} nonzero triples up to K={max_boxes} within {bounds}")
    return KronSet(row_bounds=bounds, max_boxes=max_boxes, triples=tuple(triples))


def _require_nonzero(t: KronTriple) -> None:
    if t.g <= 0:
        raise InputError(f"triple {t} is not in the semigroup (g=0)")


def check_semigroup(t1: KronTriple, t2: KronTriple, cache: KronCache | None = None) -> KronTriple:
    """Row-wise sum of two nonzero triples with its coefficient.

    Raises:
        InputError: If either input has g = 0.
        FalsificationError: If the sum has g = 0.
    """
    _require_nonzero(t1)
    _require_nonzero(t2)
    total = kron_triple(
        add_rowwise(t1.mu, t2.mu),
        add_rowwise(t1.nu, t2.nu),
        add_rowwise(t1.lam, t2.lam),
        cache=cache,
    )
    if total.g == 0:
        raise FalsificationError(
            "row-wise sum of nonzero triples has zero coefficient",
            {"t1": str(t1), "t2": str(t2), "sum": str(total)},
        )
    return total


def check_stability(
    t: KronTriple, factor: int, strict: bool = True, cache: KronCache | None = None
) -> bool:
    """True iff the ``factor``-scaled triple still has a nonzero coefficient.

    Raises:
        InputError: If ``t`` has g = 0 or ``factor < 1``.
        FalsificationError: In strict mode, when the scaled coefficient vanishes.
    """
    _require_nonzero(t)
    if factor < 1:
        raise InputError(f"scaling factor must be >= 1, got {factor}")
    g = kronecker_coefficient(scale(t.mu, factor), scale(t.nu, factor), scale(t.lam, factor), cache=cache)
    if g == 0 and strict:
        raise FalsificationError(
            "scaled triple has zero coefficient", {"triple": str(t), "factor": factor}
        )
    return g > 0


def extract_generators(kron_set: KronSet) -> list[KronTriple]:
    """Members that are not a row-wise sum of two smaller members.

    These are generator candidates up to ``kron_set.max_boxes`` only; members
    of larger size may need further generators.
    """
    keys = {t.key for t in kron_set.triples}
    by_size: dict[int, list[KronTriple]] = defaultdict(list)
    for t in kron_set.triples:
        by_size[t.size].append(t)

    def decomposable(t: KronTriple) -> bool:
        for size in range(1, t.size // 2 + 1):
            for s in by_size.get(size, ()):
                rest = (
                    subtract_rowwise(t.mu, s.mu),
                    subtract_rowwise(t.nu, s.nu),
                    subtract_rowwise(t.lam, s.lam),
                )
                if None in rest:
                    continue
                if tuple(p.rows for p in rest) in keys:
                    return True
        return False

    generators = [t for t in kron_set.triples if not decomposable(t)]
    logger.info(f"{len(generators)} generator candidates among {len(kron_set)} triples")
    return generators


@dataclass(frozen=True)
class EntropyReport:
    """Shannon entropies (natural log) of the normalized rows of a triple."""
    h_mu: float
    h_nu: float
    h_lam: float
    holds: bool


def _row_entropy(p: Partition) -> float:
    return float(entropy(p.rows)) if p.rows else 0.0


def entropy_check(t: KronTriple, strict: bool = False) -> EntropyReport:
    """Test H(lambda) <= H(mu) + H(nu) and |H(mu) - H(nu)| <= H(lambda).

    Violations are logged and returned; with ``strict`` they raise
    ``FalsificationError`` instead.
    """
    _require_nonzero(t)
    h_mu, h_nu, h_lam = _row_entropy(t.mu), _row_entropy(t.nu), _row_entropy(t.lam)
    holds = h_lam <= h_mu + h_nu + ENTROPY_SLACK and abs(h_mu - h_nu) <= h_lam + ENTROPY_SLACK
    if not holds:
        payload = {"triple": str(t), "H_mu": h_mu, "H_nu": h_nu, "H_lambda": h_lam}
        if strict:
            raise FalsificationError("entropic relation violated", payload)
        logger.warning(f"Entropic relation violated for {t}: {payload}")
    return EntropyReport(h_mu=h_mu, h_nu=h_nu, h_lam=h_lam, holds=holds)
