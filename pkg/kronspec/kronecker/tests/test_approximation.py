"""Tests for the spectral accuracy of nonzero triples against states."""

import math
from fractions import Fraction

import numpy as np
import pytest

from kronspec.kronecker.src.approximation import (
    ApproximationRow,
    component_errors,
    fitted_constant,
    normalized_triple,
    sequence_approximation,
    witness_approximation,
)
from kronspec.kronecker.src.coefficients import kron_triple
from kronspec.kronecker.src.semigroup import enumerate_kron_upto
from kronspec.shared.errors import FalsificationError
from kronspec.shared.models import SpectralTriple, Spectrum
from kronspec.spectra.src.density import sample_spectral_triples
from kronspec.spectra.src.estimation import converse_delta

HALF = Fraction(1, 2)


class TestApproximationRow:
    """Delta comparison and fitted constants."""

    def test_within(self):
        assert ApproximationRow(k=4, errors=(0.1, 0.2, 0.3), delta=0.3).within
        assert not ApproximationRow(k=4, errors=(0.1, 0.4, 0.3), delta=0.3).within

    def test_fitted_constant(self):
        row = ApproximationRow(k=4, errors=(0.0, 0.5, 0.1), delta=converse_delta(2, 2, 4))
        assert row.fitted_constant == pytest.approx(0.5 / math.sqrt(math.log(4) / 4))

    def test_fitted_constant_single_box(self):
        assert math.isnan(ApproximationRow(k=1, errors=(1.0, 1.0, 1.0), delta=math.inf).fitted_constant)
        assert math.isnan(fitted_constant([ApproximationRow(k=1, errors=(0.0, 0.0, 0.0), delta=math.inf)]))

    def test_fitted_constant_takes_largest(self):
        rows = [
            ApproximationRow(k=4, errors=(0.2, 0.0, 0.0), delta=1.0),
            ApproximationRow(k=9, errors=(0.3, 0.0, 0.0), delta=1.0),
        ]
        assert fitted_constant(rows) == pytest.approx(max(r.fitted_constant for r in rows))


class TestNormalizedTriple:
    """Exact spectra from triples."""

    def test_padding(self):
        p = normalized_triple(kron_triple((1, 1), (1, 1), (2,)), (2, 2, 4))
        assert p.rA.probs == (HALF, HALF)
        assert p.rAB.probs == (1, 0, 0, 0)
        assert p.exact

    def test_component_errors(self):
        p = normalized_triple(kron_triple((2,), (2,), (2,)), (2, 2, 4))
        q = normalized_triple(kron_triple((1, 1), (1, 1), (2,)), (2, 2, 4))
        assert component_errors(p, q) == (1.0, 1.0, 0.0)


class TestWitnessApproximation:
    """States realizing nonzero triples."""

    def test_small_triples_within_delta(self):
        for t in enumerate_kron_upto(4, (2, 2, 4)).triples:
            row = witness_approximation(t, 2, 2, seed=0, restarts=4, iterations=60, strict=True)
            assert row.k == t.size
            assert all(e <= converse_delta(2, 2, t.size) for e in row.errors)

    def test_single_box_has_no_limit(self):
        row = witness_approximation(kron_triple((1,), (1,), (1,)), 2, 2, seed=0, restarts=2, iterations=40)
        assert row.delta == math.inf
        assert row.within


class TestSequenceApproximation:
    """Nonzero triples near the spectra of states."""

    def test_sampled_states_within_delta(self):
        for _, target in sample_spectral_triples(5, 2, 2, seed=3):
            rows = sequence_approximation(target, range(1, 7), strict=True)
            assert [row.k for row in rows] == list(range(1, 7))
            assert all(row.within for row in rows)

    def test_exact_target(self):
        target = SpectralTriple(rA=Spectrum.of(HALF, HALF), rB=Spectrum.of(HALF, HALF), rAB=Spectrum.of(1, 0, 0, 0))
        rows = sequence_approximation(target, [2, 4])
        assert [row.errors for row in rows] == [(0.0, 0.0, 0.0), (0.0, 0.0, 0.0)]

    def test_strict_raises_past_delta(self, monkeypatch):
        monkeypatch.setattr("kronspec.kronecker.src.approximation.converse_delta", lambda m, n, k: 0.0)
        target = SpectralTriple(
            rA=Spectrum.of(0.7, 0.3), rB=Spectrum.of(0.6, 0.4), rAB=Spectrum.of(0.5, 0.2, 0.2, 0.1)
        )
        with pytest.raises(FalsificationError):
            sequence_approximation(target, [3], strict=True)

    def test_distances_match_delta_scale(self):
        rng = np.random.default_rng(5)
        probs = np.sort(rng.dirichlet(np.ones(4)))[::-1]
        target = SpectralTriple(rA=Spectrum.of(0.8, 0.2), rB=Spectrum.of(0.8, 0.2), rAB=Spectrum(probs=probs))
        rows = sequence_approximation(target, [8])
        assert rows[0].delta == pytest.approx(converse_delta(2, 2, 8))
