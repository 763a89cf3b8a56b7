"""Persistent character and Kronecker-coefficient cache for the kron CLI.

The file is JSON::

    {"version": 1,
     "characters": [["2,1", "1,1,1", 2], ...],
     "kron": [["2,1", "2,1", "2,1", 1], ...]}

with diagrams in their textual form. It is advisory: an invocation that
cannot take the lock, or whose file fails the spot check, runs without it.
"""

from __future__ import annotations

import fcntl
import logging
import os
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from kronspec.kronecker.src.coefficients import KRON_CACHE, KronCache, kronecker_coefficient
from kronspec.partitions.src.young import format_partition, parse_partition
from kronspec.shared.errors import InputError
from kronspec.shared.models import Partition
from kronspec.symfunc.src.characters import CHARACTER_CACHE, CharacterCache, character

logger = logging.getLogger(__name__)

SPOT_CHECKS = 100


class CacheFile(BaseModel):
    """Serialized memo entries."""

    version: Literal[1] = 1
    characters: list[tuple[str, str, int]] = Field(default_factory=list)
    kron: list[tuple[str, str, str, int]] = Field(default_factory=list)

    @classmethod
    def capture(cls, characters: CharacterCache, kron: KronCache) -> CacheFile:
        """Snapshot both memos in sorted order."""
        def text(rows: tuple[int, ...]) -> str:
            return format_partition(Partition(rows=rows))

        return cls(
            characters=[(text(shape), text(cycles), value)
                        for (shape, cycles), value in sorted(characters.entries().items())],
            kron=[(text(mu), text(nu), text(lam), g) for (mu, nu, lam), g in sorted(kron.entries().items())],
        )

    def character_entries(self) -> list[tuple[tuple[tuple[int, ...], tuple[int, ...]], int]]:
        return [((parse_partition(s).rows, parse_partition(c).rows), v) for s, c, v in self.characters]

    def kron_entries(self) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
        return [((parse_partition(a).rows, parse_partition(b).rows, parse_partition(c).rows), g)
                for a, b, c, g in self.kron]


def read_cache(path: Path) -> CacheFile:
    """Parse a cache file.

    Raises:
        InputError: If the content is not a valid cache file.
    """
    try:
        return CacheFile.model_validate_json(path.read_text())
    except ValidationError as e:
        raise InputError(f"invalid cache file {path}: {e.error_count()} validation errors") from e


def write_cache(path: Path, cache: CacheFile) -> None:
    """Write atomically through a temporary sibling file."""
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(cache.model_dump_json() + "\n")
    os.replace(tmp, path)


def spot_check(cache: CacheFile, samples: int = SPOT_CHECKS, seed: int = 0) -> bool:
    """Recompute up to ``samples`` random entries from scratch and compare."""
    characters = cache.character_entries()
    kron = cache.kron_entries()
    total = len(characters) + len(kron)
    if total == 0:
        return True
    rng = np.random.default_rng(seed)
    for index in sorted(rng.choice(total, size=min(samples, total), replace=False).tolist()):
        if index < len(characters):
            (shape, cycles), value = characters[index]
            fresh = character(shape, cycles, cache=CharacterCache())
            label = f"chi_{shape}({cycles})"
        else:
            (mu, nu, lam), value = kron[index - len(characters)]
            fresh = kronecker_coefficient(mu, nu, lam, cache=KronCache(), characters=CharacterCache())
            label = f"g({mu}|{nu}|{lam})"
        if fresh != value:
            logger.warning(f"Cache entry {label}={value} disagrees with recomputed {fresh}")
            return False
    return True


def load_into_memos(cache: CacheFile) -> None:
    CHARACTER_CACHE.load(cache.character_entries())
    KRON_CACHE.load(cache.kron_entries())


@contextmanager
def cache_session(path: Path | None) -> Iterator[bool]:
    """Hold the cache file for one command.

    Loads the file into the process-wide memos on entry and writes the grown
    memos back when the body finishes without error. Yields whether the
    cache is active.
    """
    if path is None:
        yield False
        return
    try:
        lock = open(path.with_name(path.name + ".lock"), "a")
    except OSError as e:
        logger.warning(f"Cannot open the lock for cache {path} ({e}), running without it")
        yield False
        return
    with lock:
        try:
            fcntl.flock(lock, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError:
            logger.warning(f"Cache {path} is locked by another process, running without it")
            yield False
            return
        try:
            if path.exists():
                try:
                    stored = read_cache(path)
                except InputError as e:
                    logger.warning(f"{e}; starting with an empty cache")
                else:
                    if spot_check(stored):
                        load_into_memos(stored)
                        logger.info(f"Loaded {len(stored.characters)} characters and {len(stored.kron)} coefficients from {path}")
                    else:
                        logger.warning(f"Cache {path} failed its spot check and is discarded")
            yield True
            write_cache(path, CacheFile.capture(CHARACTER_CACHE, KRON_CACHE))
            logger.debug(f"Saved {len(CHARACTER_CACHE)} characters and {len(KRON_CACHE)} coefficients to {path}")
        finally:
            fcntl.flock(lock, fcntl.LOCK_UN)
