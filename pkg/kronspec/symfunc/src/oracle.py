"""Brute-force character oracle via power-sum expansion.

For a class with cycle lengths c_1..c_l, the coefficient of the monomial
x^(lambda + delta) in a_delta * p_c1 * ... * p_cl equals chi_lambda(class),
where a_delta is the Vandermonde determinant in k variables and
delta = (k-1, ..., 1, 0). Independent of the Murnaghan-Nakayama code, and
only practical for small k.
"""

from __future__ import annotations

from functools import lru_cache

import sympy as sp

from kronspec.partitions.src.young import enumerate_partitions, pad
from kronspec.shared.models import Partition, PartitionLike, as_partition


@lru_cache(maxsize=None)
def _expanded(cycles: tuple[int, ...], k: int) -> sp.Poly:
    xs = sp.symbols(f"x0:{k}")
    vandermonde = sp.prod([xs[i] - xs[j] for i in range(k) for j in range(i + 1, k)])
    power_sums = sp.prod([sum(x ** c for x in xs) for c in cycles])
    return sp.Poly(sp.expand(vandermonde * power_sums), *xs)


def power_sum_oracle(cycle_type: PartitionLike) -> dict[Partition, int]:
    """All characters of S_k on one class, read off the expanded polynomial.

    Returns:
        lambda -> chi_lambda(class) for every partition lambda of k.
    """
    cycles = as_partition(cycle_type)
    k = cycles.size
    if k == 0:
        return {Partition(): 1}
    poly = _expanded(cycles.rows, k)
    result = {}
    for lam in enumerate_partitions(k, k):
        exponents = tuple(r + (k - 1 - i) for i, r in enumerate(pad(lam, k)))
        result[lam] = int(poly.coeff_monomial(exponents))
    return result
