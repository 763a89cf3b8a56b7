"""Kronecker coefficients by character averaging.

    g_{mu nu lambda} = (1/k!) * sum over classes C of |C| chi_mu(C) chi_nu(C) chi_lambda(C)

The sum is an integer multiple of k!; a remainder means the character values
are wrong and is raised as a ``ConsistencyError``.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Iterable, Mapping
from functools import lru_cache
from math import factorial

from kronspec.shared.errors import ConsistencyError, InputError
from kronspec.shared.models import CycleType, KronTriple, PartitionLike, as_partition
from kronspec.symfunc.src.characters import CharacterCache, character, cycle_types

logger = logging.getLogger(__name__)

KronKey = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def kron_key(mu: tuple[int, ...], nu: tuple[int, ...], lam: tuple[int, ...]) -> KronKey:
    """Order-independent key; g is symmetric in its three arguments."""
    a, b, c = sorted((mu, nu, lam))
    return (a, b, c)


class KronCache:
    """Memo of sorted (mu, nu, lambda) rows -> g, same locking as ``CharacterCache``."""

    def __init__(self, entries: Mapping[KronKey, int] | None = None):
        self._entries: dict[KronKey, int] = dict(entries or {})
        self._lock = threading.Lock()

    def get(self, key: KronKey) -> int | None:
        return self._entries.get(key)

    def put(self, key: KronKey, value: int) -> int:
        with self._lock:
            return self._entries.setdefault(key, value)

    def load(self, entries: Iterable[tuple[KronKey, int]]) -> None:
        with self._lock:
            for (mu, nu, lam), value in entries:
                self._entries.setdefault(kron_key(mu, nu, lam), value)

    def entries(self) -> dict[KronKey, int]:
        with self._lock:
            return dict(self._entries)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: object) -> bool:
        return key in self._entries


KRON_CACHE = KronCache()


@lru_cache(maxsize=64)
def _classes(k: int) -> tuple[CycleType, ...]:
    return tuple(cycle_types(k))


def kronecker_coefficient(
    mu: PartitionLike,
    nu: PartitionLike,
    lam: PartitionLike,
    cache: KronCache | None = None,
    characters: CharacterCache | None = None,
) -> int:
    """Multiplicity of V_lambda in V_mu (x) V_nu.

    Args:
        mu: First diagram
        nu: Second diagram
        lam: Third diagram
        cache: Coefficient memo; defaults to the process-wide cache
        characters: Character memo passed through to ``character``

    Returns:
        The exact nonnegative integer g.

    Raises:
        InputError: If the three sizes differ.
        ConsistencyError: If the class sum is not divisible by k!.
    """
    mu, nu, lam = as_partition(mu), as_partition(nu), as_partition(lam)
    if not (mu.size == nu.size == lam.size):
        raise InputError(
            f"size mismatch: |mu|={mu.size}, |nu|={nu.size}, |lambda|={lam.size}"
        )
    cache = cache if cache is not None else KRON_CACHE
    key = kron_key(mu.rows, nu.rows, lam.rows)
    cached = cache.get(key)
    if cached is not None:
        return cached

    k = mu.size
    total = 0
    for c in _classes(k):
        chi_mu = character(mu, c, characters)
        if chi_mu == 0:
            continue
        chi_nu = character(nu, c, characters)
        if chi_nu == 0:
            continue
        total += c.class_size * chi_mu * chi_nu * character(lam, c, characters)

    g, remainder = divmod(total, factorial(k))
    if remainder or g < 0:
        raise ConsistencyError(
            f"class sum {total} for ({mu}|{nu}|{lam}) is not a nonnegative multiple of {k}!"
        )
    return cache.put(key, g)


def kron_triple(mu: PartitionLike, nu: PartitionLike, lam: PartitionLike, **kwargs) -> KronTriple:
    """``KronTriple`` carrying its computed coefficient."""
    mu, nu, lam = as_partition(mu), as_partition(nu), as_partition(lam)
    return KronTriple(mu=mu, nu=nu, lam=lam, g=kronecker_coefficient(mu, nu, lam, **kwargs))
