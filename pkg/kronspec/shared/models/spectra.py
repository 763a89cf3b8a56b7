"""Spectrum and quantum-state models.

Spectra hold either floats (sampled eigenvalues) or exact ``Fraction`` values
(normalized diagrams, rational queries against the polytope).
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from numbers import Real
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from kronspec.shared.config import get_settings


def _is_exact(x: Any) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


class Spectrum(BaseModel):
    """A weakly decreasing probability vector.

    Attributes:
        probs: Nonnegative entries summing to 1 within ``tol__spectrum_sum``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    probs: tuple[Real, ...] = Field(..., min_length=1, description="Sorted probabilities")

    @field_validator("probs", mode="before")
    @classmethod
    def unwrap_numpy(cls, v: Any) -> Any:
        if isinstance(v, np.ndarray):
            return tuple(float(x) for x in v)
        if isinstance(v, Sequence) and not isinstance(v, str):
            return tuple(float(x) if isinstance(x, np.floating) else x for x in v)
        return v

    @field_validator("probs")
    @classmethod
    def check_distribution(cls, probs: tuple[Real, ...]) -> tuple[Real, ...]:
        tol = get_settings().tol__spectrum_sum
        if any(p < 0 for p in probs):
            raise ValueError(f"probabilities must be nonnegative, got {probs}")
        total = sum(probs)
        if all(_is_exact(p) for p in probs):
            if total != 1:
                raise ValueError(f"probabilities must sum to 1, got {total}")
        elif abs(float(total) - 1.0) > tol:
            raise ValueError(f"probabilities must sum to 1 within {tol}, got {float(total)!r}")
        if any(a < b for a, b in zip(probs, probs[1:])):
            raise ValueError(f"probabilities must be weakly decreasing, got {probs}")
        return probs

    @classmethod
    def of(cls, *probs: Real) -> Spectrum:
        return cls(probs=probs)

    @property
    def exact(self) -> bool:
        """True when every entry is an exact rational."""
        return all(_is_exact(p) for p in self.probs)

    @property
    def dim(self) -> int:
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs], dtype=float)

    def padded(self, length: int) -> tuple[Real, ...]:
        zero: Real = Fraction(0) if self.exact else 0.0
        return self.probs + (zero,) * (length - len(self.probs))


class SpectralTriple(BaseModel):
    """Spectra of the two marginals and of the joint bipartite state.

    Attributes:
        rA: Spectrum of length m.
        rB: Spectrum of length n.
        rAB: Spectrum of length m*n.
    """

    model_config = ConfigDict(frozen=True)

    rA: Spectrum
    rB: Spectrum
    rAB: Spectrum

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.rA.dim, self.rB.dim, self.rAB.dim)

    @property
    def exact(self) -> bool:
        return self.rA.exact and self.rB.exact and self.rAB.exact

    def flatten(self) -> tuple[Real, ...]:
        """Concatenate ``rA ++ rB ++ rAB``."""
        return self.rA.probs + self.rB.probs + self.rAB.probs


class DensityOperator(BaseModel):
    """A Hermitian, positive semidefinite, unit-trace matrix.

    Attributes:
        dim: Hilbert-space dimension.
        matrix: ``dim x dim`` complex array.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., ge=1)
    matrix: np.ndarray

    @model_validator(mode="after")
    def check_state(self) -> DensityOperator:
        settings = get_settings()
        m = self.matrix
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"matrix shape {m.shape} does not match dim {self.dim}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=settings.tol__hermitian):
            raise ValueError("matrix is not Hermitian")
        trace = float(np.real(np.trace(m)))
        if abs(trace - 1.0) > settings.tol__spectrum_sum:
            raise ValueError(f"trace must be 1, got {trace!r}")
        if float(np.linalg.eigvalsh(m).min()) < -settings.tol__psd:
            raise ValueError("matrix is not positive semidefinite")
        return self

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> DensityOperator:
        """Symmetrize and trace-normalize an (almost) density matrix."""
        m = np.asarray(matrix, dtype=complex)
        m = (m + m.conj().T) / 2
        m = m / np.real(np.trace(m))
        return cls(dim=m.shape[0], matrix=m)


class PureState(BaseModel):
    """A unit vector.

    Attributes:
        dim: Length of the amplitude vector.
        amplitudes: Complex amplitudes with squared norm 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., ge=1)
    amplitudes: np.ndarray

    @model_validator(mode="after")
    def check_norm(self) -> PureState:
        if self.amplitudes.shape != (self.dim,):
            raise ValueError(f"amplitude shape {self.amplitudes.shape} does not match dim {self.dim}")
        norm2 = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm2 - 1.0) > get_settings().tol__spectrum_sum:
            raise ValueError(f"squared norm must be 1, got {norm2!r}")
        return self

    def density(self) -> DensityOperator:
        """The rank-one projector onto this state."""
        psi = self.amplitudes
        return DensityOperator.from_matrix(np.outer(psi, psi.conj()))
