"""Young-diagram combinatorics.

Enumeration, row-wise arithmetic, normalization, conjugation and hook lengths.
All functions are pure and operate on immutable ``Partition`` values.

Canonical enumeration order is lexicographically decreasing, e.g. for k=4:
``4, 3+1, 2+2, 2+1+1, 1+1+1+1``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from fractions import Fraction
from functools import lru_cache
from numbers import Real

from pydantic import ValidationError

from kronspec.shared.errors import InputError
from kronspec.shared.models import NormalizedPartition, Partition
from kronspec.shared.models.partition import EMPTY_TEXT


def _partitions_of(k: int, max_rows: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    if max_rows == 0:
        return
    for first in range(min(k, max_part), 0, -1):
        # the remaining k-first boxes must fit into max_rows-1 rows of width <= first
        if first * max_rows < k:
            break
        for rest in _partitions_of(k - first, max_rows - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=4096)
def _enumerate_rows(k: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_partitions_of(k, d, k))


def enumerate_partitions(k: int, d: int) -> list[Partition]:
    """All partitions of ``k`` with at most ``d`` rows.

    Args:
        k: Number of boxes (>= 0)
        d: Maximal number of rows (>= 1)

    Returns:
        Each partition exactly once, lexicographically decreasing.
    """
    if k < 0 or d < 1:
        raise InputError(f"need k >= 0 and d >= 1, got k={k}, d={d}")
    return [Partition(rows=rows) for rows in _enumerate_rows(k, d)]


def pad(a: Partition, length: int) -> tuple[int, ...]:
    """Row tuple of ``a`` padded with zero rows to ``length`` entries."""
    if length < a.length:
        raise InputError(f"cannot pad {a} with {a.length} rows to length {length}")
    return a.rows + (0,) * (length - a.length)


def add_rowwise(a: Partition, b: Partition) -> Partition:
    """Row-wise sum, the semigroup operation on diagrams."""
    length = max(a.length, b.length)
    return Partition(rows=tuple(x + y for x, y in zip(pad(a, length), pad(b, length))))


def subtract_rowwise(a: Partition, b: Partition) -> Partition | None:
    """Row-wise difference ``a - b``, or None when it is not a diagram."""
    if b.length > a.length:
        return None
    diff = [x - y for x, y in zip(a.rows, pad(b, a.length))]
    if any(x < 0 for x in diff) or any(x < y for x, y in zip(diff, diff[1:])):
        return None
    return Partition(rows=tuple(diff))


def scale(a: Partition, n: int) -> Partition:
    """Multiply every row by ``n`` (>= 1)."""
    if n < 1:
        raise InputError(f"scale factor must be >= 1, got {n}")
    return Partition(rows=tuple(n * r for r in a.rows))


def normalize(a: Partition) -> NormalizedPartition:
    """Exact row distribution ``a / |a|``."""
    if a.size == 0:
        raise InputError("cannot normalize empty diagram")
    return NormalizedPartition(weights=tuple(Fraction(r, a.size) for r in a.rows))


def conjugate(a: Partition) -> Partition:
    """Transpose the diagram: column lengths become rows."""
    if not a.rows:
        return a
    return Partition(rows=tuple(sum(1 for r in a.rows if r > j) for j in range(a.rows[0])))


def hook_lengths(a: Partition) -> list[int]:
    """Hook length of every box, read row by row."""
    if a.size == 0:
        raise InputError("hook lengths need a nonempty diagram")
    cols = conjugate(a).rows
    return [
        (row - j - 1) + (cols[j] - i - 1) + 1
        for i, row in enumerate(a.rows)
        for j in range(row)
    ]


def dominates(a: Partition, b: Partition) -> bool:
    """Dominance order: every prefix sum of ``a`` is at least that of ``b``."""
    if a.size != b.size:
        raise InputError(f"dominance needs equal sizes, got {a.size} and {b.size}")
    length = max(a.length, b.length)
    sa = sb = 0
    for x, y in zip(pad(a, length), pad(b, length)):
        sa, sb = sa + x, sb + y
        if sa < sb:
            return False
    return True


def parse_partition(text: str) -> Partition:
    """Parse ``"4,2,1"`` (or ``"-"`` for the empty diagram).

    Raises:
        InputError: On non-integers, negative or increasing rows.
    """
    text = text.strip()
    if text in (EMPTY_TEXT, ""):
        return Partition()
    try:
        rows = tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise InputError(f"malformed partition text {text!r}") from e
    try:
        return Partition(rows=rows)
    except ValidationError as e:
        raise InputError(f"malformed partition text {text!r}: rows must be weakly decreasing positive integers") from e


def format_partition(a: Partition) -> str:
    """Inverse of :func:`parse_partition`."""
    return str(a)


def l1_distance(p: Sequence[Real], q: Sequence[Real]) -> Real:
    """L1 distance of two vectors after zero padding (exact for rationals)."""
    length = max(len(p), len(q))
    pp = list(p) + [0] * (length - len(p))
    qq = list(q) + [0] * (length - len(q))
    return sum((abs(x - y) for x, y in zip(pp, qq)), 0)
