"""Schur polynomials and Schur-Weyl outcome probabilities.

Schur polynomials are evaluated by the branching rule over variables,

    s_lambda(x_1..x_n) = sum over horizontal strips lambda/mu of
                         x_n^{|lambda|-|mu|} * s_mu(x_1..x_{n-1}),

whose terms are all nonnegative for nonnegative inputs. Inputs made of
``Fraction`` values are evaluated exactly.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from functools import lru_cache
from numbers import Real

from kronspec.partitions.src.young import enumerate_partitions, l1_distance, normalize
from kronspec.shared.config import get_settings
from kronspec.shared.errors import InputError
from kronspec.shared.models import Partition, PartitionLike, Spectrum, as_partition
from kronspec.symfunc.src.characters import dim_sk

logger = logging.getLogger(__name__)


def _values(x: Spectrum | Sequence[Real]) -> tuple[Real, ...]:
    return tuple(x.probs) if isinstance(x, Spectrum) else tuple(x)


def _strip_predecessors(lam: tuple[int, ...], n: int) -> list[tuple[int, ...]]:
    """Diagrams mu with at most n-1 rows such that lam/mu is a horizontal strip."""
    padded = lam + (0,) * (n - len(lam))
    ranges = [range(padded[i + 1], padded[i] + 1) for i in range(n - 1)]
    result = []
    for mu in itertools.product(*ranges):
        rows = list(mu)
        while rows and rows[-1] == 0:
            rows.pop()
        result.append(tuple(rows))
    return result


def schur_poly(lam: PartitionLike, x: Spectrum | Sequence[Real]) -> Real:
    """Evaluate s_lambda at a nonnegative vector.

    Args:
        lam: Diagram
        x: Nonnegative evaluation point (floats or Fractions)

    Returns:
        s_lambda(x); 0 when lambda has more rows than x has entries.

    Raises:
        InputError: On an empty or negative evaluation point.
    """
    lam = as_partition(lam)
    xs = _values(x)
    if not xs:
        raise InputError("evaluation point needs at least one entry")
    if any(v < 0 for v in xs):
        raise InputError("schur_poly requires nonnegative entries")
    zero = xs[0] * 0
    if lam.length > len(xs):
        return zero

    @lru_cache(maxsize=None)
    def branch(shape: tuple[int, ...], n: int) -> Real:
        if len(shape) > n:
            return zero
        if n == 0:
            return zero + 1
        if n == 1:
            return xs[0] ** (shape[0] if shape else 0)
        size = sum(shape)
        total = zero
        for mu in _strip_predecessors(shape, n):
            total += xs[n - 1] ** (size - sum(mu)) * branch(mu, n - 1)
        return total

    return branch(lam.rows, len(xs))


def schur_weyl_prob(lam: PartitionLike, r: Spectrum, k: int) -> Real:
    """Probability of measuring diagram lambda on k copies of a state with spectrum r.

    Equals dim V_lambda * s_lambda(r), the weight of the
    U_lambda (x) V_lambda block in the Schur-Weyl decomposition.

    Raises:
        InputError: If ``|lambda| != k``.
    """
    lam = as_partition(lam)
    if lam.size != k:
        raise InputError(f"size mismatch: |lambda|={lam.size}, k={k}")
    if k == 0:
        return schur_poly(lam, r) * 1
    return dim_sk(lam) * schur_poly(lam, r)


def weyl_distribution(r: Spectrum, k: int) -> list[tuple[Partition, Real]]:
    """All (lambda, probability) pairs over Par(k, len(r)) in canonical order."""
    return [(lam, schur_weyl_prob(lam, r, k)) for lam in enumerate_partitions(k, r.dim)]


def normalization_defect(r: Spectrum, k: int) -> float:
    """|1 - sum_lambda dim V_lambda s_lambda(r)|, zero up to round-off."""
    total = sum(p for _, p in weyl_distribution(r, k))
    return abs(float(total) - 1.0)


def check_normalization(r: Spectrum, k: int, tol: float | None = None) -> bool:
    """True iff the Schur-Weyl probabilities over Par(k, d) sum to 1 within ``tol``."""
    tol = get_settings().tol__normalization if tol is None else tol
    return normalization_defect(r, k) <= tol


def concentration_mass(r: Spectrum, k: int, eps: Real) -> Real:
    """Probability that the measured diagram satisfies ||lambda_bar - r||_1 <= eps."""
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    mass = 0
    for lam, p in weyl_distribution(r, k):
        if l1_distance(normalize(lam).weights, r.probs) <= eps:
            mass += p
    return mass
