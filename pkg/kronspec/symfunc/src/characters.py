"""Symmetric-group characters by the Murnaghan-Nakayama rule.

Border strips are removed on the beta-number (abacus) encoding of a diagram:
removing a strip of length r moves one bead from position b to b - r, with
sign (-1)^(beads strictly between). The longest cycle is removed first, and
every subproblem (shape, remaining cycles) is itself a character value of a
smaller symmetric group, so one cache holds both final and intermediate
entries.
"""

from __future__ import annotations

import logging
import threading
from collections import Counter
from collections.abc import Iterable, Mapping
from math import factorial, prod

from kronspec.partitions.src.young import enumerate_partitions, hook_lengths
from kronspec.shared.errors import InputError
from kronspec.shared.models import CharacterValue, CycleType, Partition, PartitionLike, as_partition

logger = logging.getLogger(__name__)

CharacterKey = tuple[tuple[int, ...], tuple[int, ...]]


class CharacterCache:
    """Memo of (shape rows, cycle rows) -> character value.

    Reads are lock-free dict lookups. Writes go through ``setdefault`` under a
    lock, so a reader never sees a partially written entry and racing
    inserts of the same key keep the first (identical) value.
    """

    def __init__(self, entries: Mapping[CharacterKey, int] | None = None):
        self._entries: dict[CharacterKey, int] = dict(entries or {})
        self._lock = threading.Lock()

    def get(self, key: CharacterKey) -> int | None:
        return self._entries.get(key)

    def put(self, key: CharacterKey, value: int) -> int:
        with self._lock:
            return self._entries.setdefault(key, value)

    def load(self, entries: Iterable[tuple[CharacterKey, int]]) -> None:
        """Bulk insert entries, e.g. from a cache file."""
        with self._lock:
            for key, value in entries:
                self._entries.setdefault(key, value)

    def entries(self) -> dict[CharacterKey, int]:
        """Snapshot copy of all entries."""
        with self._lock:
            return dict(self._entries)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: object) -> bool:
        return key in self._entries


CHARACTER_CACHE = CharacterCache()


def _shape_from_beta(beta: list[int]) -> tuple[int, ...]:
    n = len(beta)
    rows = [b - (n - 1 - i) for i, b in enumerate(sorted(beta, reverse=True))]
    while rows and rows[-1] == 0:
        rows.pop()
    return tuple(rows)


def _mn(shape: tuple[int, ...], cycles: tuple[int, ...], cache: CharacterCache) -> int:
    key = (shape, cycles)
    cached = cache.get(key)
    if cached is not None:
        return cached
    if not cycles:
        value = 1 if not shape else 0
        return cache.put(key, value)

    r, rest = cycles[0], cycles[1:]
    n = len(shape)
    beta = [row + (n - 1 - i) for i, row in enumerate(shape)]
    occupied = set(beta)
    value = 0
    for idx, b in enumerate(beta):
        target = b - r
        if target < 0 or target in occupied:
            continue
        crossed = sum(1 for c in beta if target < c < b)
        moved = beta[:idx] + [target] + beta[idx + 1:]
        term = _mn(_shape_from_beta(moved), rest, cache)
        value += -term if crossed % 2 else term
    return cache.put(key, value)


def character(
    lam: PartitionLike,
    cycle_type: PartitionLike | CycleType,
    cache: CharacterCache | None = None,
) -> int:
    """Character chi_lambda evaluated on a conjugacy class.

    Args:
        lam: Irreducible representation label
        cycle_type: Cycle lengths of the class (same size as ``lam``)
        cache: Memo to use; defaults to the process-wide cache

    Returns:
        Exact integer character value.

    Raises:
        InputError: If the sizes differ.
    """
    lam = as_partition(lam)
    cycles = cycle_type.cycles if isinstance(cycle_type, CycleType) else as_partition(cycle_type)
    if lam.size != cycles.size:
        raise InputError(f"size mismatch: |lambda|={lam.size}, |class|={cycles.size}")
    return _mn(lam.rows, cycles.rows, cache if cache is not None else CHARACTER_CACHE)


def class_size(cycles: PartitionLike) -> int:
    """Number of permutations of S_k with the given cycle lengths."""
    cycles = as_partition(cycles)
    multiplicities = Counter(cycles.rows)
    denominator = prod(j ** m * factorial(m) for j, m in multiplicities.items())
    return factorial(cycles.size) // denominator


def cycle_types(k: int) -> list[CycleType]:
    """All conjugacy classes of S_k with their sizes, in partition order."""
    return [
        CycleType(cycles=c, class_size=class_size(c))
        for c in enumerate_partitions(k, max(k, 1))
    ]


def character_table(k: int, cache: CharacterCache | None = None) -> dict[Partition, dict[Partition, int]]:
    """Full character table of S_k: lambda -> {class -> chi}."""
    classes = enumerate_partitions(k, max(k, 1))
    return {
        lam: {c: character(lam, c, cache) for c in classes}
        for lam in classes
    }


def character_values(lam: PartitionLike, cache: CharacterCache | None = None) -> list[CharacterValue]:
    """Row of the character table for ``lam``, one entry per class in partition order."""
    lam = as_partition(lam)
    return [
        CharacterValue(lam=lam, cycle_type=c, value=character(lam, c, cache))
        for c in cycle_types(lam.size)
    ]


def dim_sk(lam: PartitionLike) -> int:
    """Dimension of V_lambda by the hook-length formula."""
    lam = as_partition(lam)
    if lam.size == 0:
        raise InputError("dimension needs a nonempty diagram")
    return factorial(lam.size) // prod(hook_lengths(lam))


def dim_gl(lam: PartitionLike, d: int) -> int:
    """Dimension of the GL(d) irreducible with highest weight lambda.

    Product over boxes (i, j) of (d + j - i) / hook(i, j); zero when lambda
    has more than ``d`` rows.
    """
    lam = as_partition(lam)
    if d < 1:
        raise InputError(f"d must be >= 1, got {d}")
    if lam.length > d:
        return 0
    if lam.size == 0:
        return 1
    contents = [d + j - i for i, row in enumerate(lam.rows) for j in range(row)]
    return prod(contents) // prod(hook_lengths(lam))
