"""Numerical search for a state realizing a target spectral triple.

The joint state is parameterized as rho = U diag(r^AB) U^dagger with
U = expm(iH) and H Hermitian, i.e. a purification whose Schmidt coefficients
are pinned to the target joint spectrum. PSD, trace and the joint spectrum
hold by construction; the search moves the d^2 real coordinates of H to
bring both marginal spectra onto their targets.

Each restart is an independent task seeded from (seed, restart index). The
first restart (by index) that reaches ``target_error`` wins; otherwise the
best error overall, so the result does not depend on the thread count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from kronspec.partitions.src.young import l1_distance
from kronspec.shared.config import get_settings
from kronspec.shared.errors import InputError
from kronspec.shared.models import DensityOperator, SpectralTriple
from kronspec.spectra.src.density import marginal_spectra, spectral_triple, trial_seed

logger = logging.getLogger(__name__)

INITIAL_STEP = 0.5
MIN_STEP = 1e-9


def triple_error(achieved: SpectralTriple, target: SpectralTriple) -> float:
    """Sum of the three L1 distances between matching spectra."""
    return float(
        l1_distance(achieved.rA.probs, target.rA.probs)
        + l1_distance(achieved.rB.probs, target.rB.probs)
        + l1_distance(achieved.rAB.probs, target.rAB.probs)
    )


def _hermitian(x: np.ndarray, d: int) -> np.ndarray:
    """Hermitian matrix from d^2 reals: diagonal, then real and imaginary upper parts."""
    h = np.zeros((d, d), dtype=complex)
    h[np.diag_indices(d)] = x[:d]
    iu = np.triu_indices(d, k=1)
    half = len(iu[0])
    upper = x[d:d + half] + 1j * x[d + half:]
    h[iu] = upper
    h[(iu[1], iu[0])] = upper.conj()
    return h


@dataclass
class _Problem:
    m: int
    n: int
    joint: np.ndarray
    targets: tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def d(self) -> int:
        return self.m * self.n

    def state(self, x: np.ndarray) -> np.ndarray:
        u = expm(1j * _hermitian(x, self.d))
        return (u * self.joint[None, :]) @ u.conj().T

    def error(self, x: np.ndarray) -> float:
        spectra = marginal_spectra(self.state(x), self.m, self.n, clamp=0.0)
        return float(sum(np.abs(s - t).sum() for s, t in zip(spectra, self.targets)))


def _search(problem: _Problem, seed: np.random.SeedSequence, iterations: int, target_error: float) -> tuple[float, np.ndarray]:
    rng = np.random.default_rng(seed)
    size = problem.d ** 2
    x = rng.normal(scale=np.pi, size=size)
    best = problem.error(x)
    step = INITIAL_STEP
    for _ in range(iterations):
        if best <= target_error or step < MIN_STEP:
            break
        improved = False
        for i in rng.permutation(size):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[i] += sign * step
                err = problem.error(trial)
                if err < best:
                    x, best, improved = trial, err, True
                    break
        direction = rng.normal(size=size)
        trial = x + step * direction / np.linalg.norm(direction)
        err = problem.error(trial)
        if err < best:
            x, best, improved = trial, err, True
        if not improved:
            step /= 2
    return best, x


@dataclass(frozen=True)
class WitnessResult:
    """Best state found and its total L1 spectral error."""
    density: DensityOperator
    error: float
    restart: int
    triple: SpectralTriple


def find_witness_state(
    target: SpectralTriple,
    m: int,
    n: int,
    iterations: int | None = None,
    seed: int | None = None,
    restarts: int | None = None,
    threads: int | None = None,
    target_error: float = 1e-10,
) -> WitnessResult:
    """Local search for a bipartite state whose spectral triple matches ``target``.

    No optimality guarantee; the best state over all restarts is returned.

    Args:
        target: Spectra of lengths m, n and m*n
        m: Dimension of subsystem A
        n: Dimension of subsystem B
        iterations: Sweeps per restart
        seed: Base seed for the restart streams
        restarts: Number of random restarts
        threads: Restarts evaluated concurrently
        target_error: Stop as soon as a restart gets this close

    Raises:
        InputError: If the target dimensions are not (m, n, m*n).
    """
    if target.dims != (m, n, m * n):
        raise InputError(f"target dimensions {target.dims} do not match ({m}, {n}, {m * n})")
    settings = get_settings()
    iterations = iterations or settings.witness__iterations
    restarts = restarts or settings.witness__restarts
    threads = max(1, threads or settings.run__threads)
    seed = settings.run__seed if seed is None else seed

    problem = _Problem(
        m=m,
        n=n,
        joint=target.rAB.as_array(),
        targets=(target.rA.as_array(), target.rB.as_array(), target.rAB.as_array()),
    )

    def run(index: int) -> tuple[float, np.ndarray]:
        return _search(problem, trial_seed(seed, index), iterations, target_error)

    best: tuple[float, int, np.ndarray] | None = None
    found = None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, restarts, threads):
            batch = range(start, min(start + threads, restarts))
            for index, (err, x) in zip(batch, pool.map(run, batch)):
                if err <= target_error:
                    found = (err, index, x)
                    break
                if best is None or err < best[0]:
                    best = (err, index, x)
            if found is not None:
                break

    _, index, x = found or best
    density = DensityOperator.from_matrix(problem.state(x))
    achieved = spectral_triple(density, m, n)
    error = triple_error(achieved, target)
    logger.info(f"Witness search: error {error:.3g} after restart {index + 1} of {restarts}")
    return WitnessResult(density=density, error=error, restart=index, triple=achieved)
