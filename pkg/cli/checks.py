"""Falsification suites run by ``kron check``.

Each suite raises ``FalsificationError`` on the first counterexample and
otherwise returns the number of individual checks it performed.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass
from math import factorial

import numpy as np

from kronspec.kronecker.src.approximation import fitted_constant, sequence_approximation, witness_approximation
from kronspec.kronecker.src.coefficients import KronCache, kronecker_coefficient
from kronspec.kronecker.src.semigroup import (
    check_semigroup,
    check_stability,
    entropy_check,
    enumerate_kron_upto,
)
from kronspec.partitions.src.young import enumerate_partitions
from kronspec.shared.errors import FalsificationError
from kronspec.shared.models import Partition, Spectrum
from kronspec.spectra.src.density import sample_spectral_triples, trial_seed
from kronspec.spectra.src.estimation import check_estimation_bound, check_pinsker
from kronspec.symfunc.src.characters import character, character_values, cycle_types, dim_sk
from kronspec.symfunc.src.oracle import power_sum_oracle
from kronspec.symfunc.src.schur import normalization_defect

logger = logging.getLogger(__name__)

Bounds = tuple[int, int, int]


@dataclass(frozen=True)
class SuiteSizes:
    """Problem sizes for one ``check`` run."""
    oracle_k: int = 5
    orthogonality_k: int = 7
    identity_k: int = 6
    semigroup_boxes: int = 8
    stability_k: int = 5
    spectra: int = 100
    bound_k: int = 10
    normalization_k: int = 8
    pinsker_pairs: int = 10_000
    entropy_k: int = 6
    witness_k: int = 4
    witness_restarts: int = 20
    witness_iterations: int = 200
    sequence_k: int = 10


def _random_spectrum(seed: int, index: int, d: int) -> Spectrum:
    rng = np.random.default_rng(trial_seed(seed, index))
    return Spectrum(probs=np.sort(rng.dirichlet(np.ones(d)))[::-1])


def characters_suite(sizes: SuiteSizes, **_) -> int:
    """Murnaghan-Nakayama against the power-sum oracle, then first orthogonality."""
    count = 0
    for k in range(1, sizes.oracle_k + 1):
        for c in cycle_types(k):
            for lam, expected in power_sum_oracle(c.cycles).items():
                value = character(lam, c)
                if value != expected:
                    raise FalsificationError("character disagrees with the power-sum oracle",
                                             {"lambda": str(lam), "class": str(c.cycles), "mn": value, "oracle": expected})
                count += 1
    for k in range(1, sizes.orthogonality_k + 1):
        rows = {lam: character_values(lam) for lam in enumerate_partitions(k, k)}
        for mu, nu in itertools.combinations_with_replacement(rows, 2):
            total = sum(a.cycle_type.class_size * a.value * b.value for a, b in zip(rows[mu], rows[nu]))
            if total != (factorial(k) if mu == nu else 0):
                raise FalsificationError("first orthogonality fails", {"mu": str(mu), "nu": str(nu), "sum": total})
            count += 1
    return count


def kronecker_suite(sizes: SuiteSizes, **_) -> int:
    """Symmetry, the trivial-row identity and the dimension sum rule."""
    count = 0
    for k in range(1, sizes.identity_k + 1):
        parts = enumerate_partitions(k, k)
        trivial = Partition.of(k)
        for triple in itertools.combinations_with_replacement(parts, 3):
            values = {kronecker_coefficient(*perm) for perm in itertools.permutations(triple)}
            if len(values) != 1:
                raise FalsificationError("coefficient not symmetric", {"triple": [str(p) for p in triple]})
            count += 1
        for mu, nu in itertools.product(parts, repeat=2):
            if kronecker_coefficient(mu, nu, trivial) != int(mu == nu):
                raise FalsificationError("trivial-row identity fails", {"mu": str(mu), "nu": str(nu)})
            total = sum(kronecker_coefficient(mu, nu, lam) * dim_sk(lam) for lam in parts)
            if total != dim_sk(mu) * dim_sk(nu):
                raise FalsificationError("sum rule fails", {"mu": str(mu), "nu": str(nu), "sum": total})
            count += 2
    return count


def semigroup_suite(sizes: SuiteSizes, bounds: Bounds, threads: int, **_) -> int:
    """Closure of nonzero triples under row-wise addition."""
    members = enumerate_kron_upto(sizes.semigroup_boxes - 1, bounds, threads).triples
    count = 0
    for i, t1 in enumerate(members):
        for t2 in members[i:]:
            if t1.size + t2.size <= sizes.semigroup_boxes:
                check_semigroup(t1, t2)
                count += 1
    return count


def stability_suite(sizes: SuiteSizes, bounds: Bounds, threads: int, **_) -> int:
    """Scaled nonzero triples stay nonzero."""
    members = enumerate_kron_upto(sizes.stability_k, bounds, threads).triples
    for t in members:
        for factor in (2, 3):
            check_stability(t, factor)
    return 2 * len(members)


def entropy_suite(sizes: SuiteSizes, bounds: Bounds, threads: int, **_) -> int:
    """Subadditivity and the triangle inequality on normalized rows."""
    members = enumerate_kron_upto(sizes.entropy_k, bounds, threads).triples
    for t in members:
        entropy_check(t, strict=True)
    return len(members)


def estimation_suite(sizes: SuiteSizes, seed: int, bound_slack: float, **_) -> int:
    """Schur-Weyl probabilities stay below the estimation bound."""
    count = 0
    for i in range(sizes.spectra):
        d = 2 + i % 2
        r = _random_spectrum(seed, i, d)
        for k in range(1, sizes.bound_k + 1):
            for lam in enumerate_partitions(k, d):
                check_estimation_bound(lam, r, k, slack=bound_slack)
                count += 1
    return count


def normalization_suite(sizes: SuiteSizes, seed: int, normalization: float, **_) -> int:
    """Schur-Weyl probabilities sum to one."""
    count = 0
    for i in range(sizes.spectra):
        d = 1 + i % 3
        r = _random_spectrum(seed, sizes.spectra + i, d)
        for k in range(1, sizes.normalization_k + 1):
            defect = normalization_defect(r, k)
            if defect > normalization:
                raise FalsificationError("Schur-Weyl probabilities do not sum to 1",
                                         {"r": [float(x) for x in r.probs], "k": k, "defect": defect})
            count += 1
    return count


def pinsker_suite(sizes: SuiteSizes, seed: int, pinsker_slack: float, **_) -> int:
    """Pinsker's inequality on random distribution pairs."""
    for i in range(sizes.pinsker_pairs):
        rng = np.random.default_rng(trial_seed(seed, i))
        d = 2 + i % 5
        check_pinsker(rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d)), slack=pinsker_slack)
    return sizes.pinsker_pairs


def approximation_suite(sizes: SuiteSizes, bounds: Bounds, threads: int, seed: int, **_) -> int:
    """Nonzero triples and state spectra within converse_delta of each other, both ways."""
    m, n, _ = bounds
    witness_rows = [
        witness_approximation(t, m, n, seed=seed, restarts=sizes.witness_restarts,
                              iterations=sizes.witness_iterations, threads=threads, strict=True)
        for t in enumerate_kron_upto(sizes.witness_k, (m, n, m * n), threads).triples
    ]
    cache = KronCache()
    sequence_rows = []
    for _, target in sample_spectral_triples(sizes.spectra, m, n, seed=seed):
        sequence_rows += sequence_approximation(target, range(1, sizes.sequence_k + 1),
                                                cache=cache, strict=True)
    logger.info(f"Fitted constants against 3mn={3 * m * n}: witness {fitted_constant(witness_rows):.4g}, "
                f"sequence {fitted_constant(sequence_rows):.4g}")
    return len(witness_rows) + len(sequence_rows)


SUITES: dict[str, Callable[..., int]] = {
    "characters": characters_suite,
    "kronecker": kronecker_suite,
    "semigroup": semigroup_suite,
    "stability": stability_suite,
    "entropy": entropy_suite,
    "estimation": estimation_suite,
    "normalization": normalization_suite,
    "pinsker": pinsker_suite,
    "approximation": approximation_suite,
}
