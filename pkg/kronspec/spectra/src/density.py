"""Density operators on C^m (x) C^n: sampling, marginals, spectra, purification.

Random states use ``numpy.random.default_rng``. Monte-Carlo trials derive their
stream from ``SeedSequence([seed, trial_index])`` so each trial is reproducible
on its own and independent of how trials are scheduled.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from enum import Enum

import numpy as np

from kronspec.shared.config import get_settings
from kronspec.shared.errors import ConsistencyError, InputError
from kronspec.shared.models import DensityOperator, PureState, SpectralTriple, Spectrum

logger = logging.getLogger(__name__)

Seed = int | np.random.SeedSequence | None


class Side(str, Enum):
    """Which tensor factor a partial trace keeps."""
    A = "A"
    B = "B"


def trial_seed(seed: int, index: int) -> np.random.SeedSequence:
    """Independent stream for task ``index`` of a run seeded with ``seed``."""
    return np.random.SeedSequence([seed, index])


def _rng(seed: Seed) -> np.random.Generator:
    return np.random.default_rng(get_settings().run__seed if seed is None else seed)


def _ginibre(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_density(dim: int, seed: Seed = None) -> DensityOperator:
    """Hilbert-Schmidt random state G G^dagger / Tr(G G^dagger).

    Args:
        dim: Hilbert-space dimension (>= 1)
        seed: Integer or ``SeedSequence``; defaults to ``Settings.run__seed``
    """
    if dim < 1:
        raise InputError(f"dimension must be >= 1, got {dim}")
    g = _ginibre(_rng(seed), (dim, dim))
    return DensityOperator.from_matrix(g @ g.conj().T)


def random_pure_state(dim: int, seed: Seed = None) -> PureState:
    """Haar-random unit vector."""
    if dim < 1:
        raise InputError(f"dimension must be >= 1, got {dim}")
    v = _ginibre(_rng(seed), (dim,))
    return PureState(dim=dim, amplitudes=v / np.linalg.norm(v))


def maximally_entangled(d: int) -> PureState:
    """(1/sqrt(d)) sum_i |i>|i> on C^d (x) C^d."""
    if d < 1:
        raise InputError(f"dimension must be >= 1, got {d}")
    amplitudes = np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)
    return PureState(dim=d * d, amplitudes=amplitudes)


def tensor(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    """Product state a (x) b."""
    return DensityOperator.from_matrix(np.kron(a.matrix, b.matrix))


def _check_dims(rho: DensityOperator, m: int, n: int) -> None:
    if m < 1 or n < 1 or rho.dim != m * n:
        raise InputError(f"operator of dimension {rho.dim} is not on C^{m} (x) C^{n}")


def _reduce(matrix: np.ndarray, side: Side, m: int, n: int) -> np.ndarray:
    blocks = matrix.reshape(m, n, m, n)
    if side is Side.A:
        return np.einsum("ijkj->ik", blocks)
    return np.einsum("ijil->jl", blocks)


def partial_trace(rho: DensityOperator, side: Side | str, m: int, n: int) -> DensityOperator:
    """Marginal of ``rho`` on the factor named by ``side``.

    ``Side.A`` traces out B and returns the m x m operator; ``Side.B`` the n x n one.

    Raises:
        InputError: If ``rho.dim != m * n``.
    """
    _check_dims(rho, m, n)
    return DensityOperator.from_matrix(_reduce(rho.matrix, Side(side), m, n))


def eigen_spectrum(matrix: np.ndarray, clamp: float | None = None) -> np.ndarray:
    """Sorted eigenvalues with round-off below ``clamp`` set to 0, renormalized."""
    clamp = get_settings().tol__eig_clamp if clamp is None else clamp
    try:
        values = np.linalg.eigvalsh(matrix)
    except np.linalg.LinAlgError as e:
        raise ConsistencyError(f"eigensolver failed: {e}") from e
    values = np.where(values < clamp, 0.0, values)[::-1]
    return values / values.sum()


def marginal_spectra(matrix: np.ndarray, m: int, n: int, clamp: float | None = None) -> tuple[np.ndarray, ...]:
    """(Spec rho^A, Spec rho^B, Spec rho^AB) of a raw matrix, without model validation."""
    return (
        eigen_spectrum(_reduce(matrix, Side.A, m, n), clamp),
        eigen_spectrum(_reduce(matrix, Side.B, m, n), clamp),
        eigen_spectrum(matrix, clamp),
    )


def spectral_triple(rho: DensityOperator, m: int, n: int, clamp: float | None = None) -> SpectralTriple:
    """Sorted spectra of both marginals and of ``rho`` itself."""
    _check_dims(rho, m, n)
    ra, rb, rab = marginal_spectra(rho.matrix, m, n, clamp)
    return SpectralTriple(rA=Spectrum(probs=ra), rB=Spectrum(probs=rb), rAB=Spectrum(probs=rab))


def purify(rho: DensityOperator, clamp: float | None = None) -> PureState:
    """Purification sum_i sqrt(p_i) |e_i>|i> on C^d (x) C^d.

    The first factor's marginal is ``rho``; the second has the same spectrum.
    """
    clamp = get_settings().tol__eig_clamp if clamp is None else clamp
    p, u = np.linalg.eigh(rho.matrix)
    p = np.where(p < clamp, 0.0, p)
    psi = (u * np.sqrt(p)[None, :]).reshape(rho.dim * rho.dim)
    return PureState(dim=rho.dim * rho.dim, amplitudes=psi / np.linalg.norm(psi))


def sample_spectral_triples(
    trials: int, m: int, n: int, seed: int | None = None, clamp: float | None = None
) -> Iterator[tuple[int, SpectralTriple]]:
    """Spectral triples of ``trials`` Hilbert-Schmidt random states on C^m (x) C^n."""
    if trials < 0:
        raise InputError(f"trials must be >= 0, got {trials}")
    seed = get_settings().run__seed if seed is None else seed
    for index in range(trials):
        rho = random_density(m * n, seed=trial_seed(seed, index))
        yield index, spectral_triple(rho, m, n, clamp=clamp)
