"""Tests for relative entropy, Pinsker and the estimation bound."""

import math
from fractions import Fraction

import numpy as np
import pytest

from kronspec.partitions.src.young import enumerate_partitions
from kronspec.shared.errors import FalsificationError, InputError
from kronspec.shared.models import Partition, Spectrum
from kronspec.spectra.src.estimation import (
    Estimator,
    best_diagram,
    check_estimation_bound,
    check_pinsker,
    converse_delta,
    converse_kl_bound,
    estimation_bound,
    estimation_convergence,
    kl_divergence,
)

P = Partition.of
HALF = Fraction(1, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def random_spectrum(rng, d) -> Spectrum:
    values = np.sort(rng.dirichlet(np.ones(d)))[::-1]
    return Spectrum(probs=values / values.sum())


class TestKLDivergence:
    """Natural-log relative entropy."""

    def test_identical(self):
        p = Spectrum.of(0.6, 0.3, 0.1)
        assert kl_divergence(p, p) == 0.0

    def test_point_against_uniform(self):
        assert kl_divergence(Spectrum.of(1, 0), Spectrum.of(HALF, HALF)) == pytest.approx(math.log(2))

    def test_infinite(self):
        assert kl_divergence(Spectrum.of(HALF, HALF), Spectrum.of(1, 0)) == math.inf

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            kl_divergence(Spectrum.of(1, 0), Spectrum.of(1, 0, 0))

    def test_nonnegative(self, rng):
        for d in range(1, 7):
            for _ in range(50):
                p, q = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
                assert kl_divergence(p, q) >= -1e-12
                assert kl_divergence(p, p) == pytest.approx(0.0, abs=1e-12)


class TestPinsker:
    """||p - q||_1^2 / 2 <= D(p || q)."""

    def test_examples(self):
        p = Spectrum.of(0.6, 0.4)
        assert check_pinsker(p, p)
        assert check_pinsker(Spectrum.of(1, 0), Spectrum.of(HALF, HALF))

    def test_violation_raises(self):
        with pytest.raises(FalsificationError):
            check_pinsker([0.5, 0.5], [0.5, 0.5], slack=-1.0)
        assert check_pinsker([0.5, 0.5], [0.5, 0.5], slack=-1.0, strict=False) is False

    def test_random_pairs(self, rng):
        for _ in range(1000):
            d = int(rng.integers(1, 7))
            assert check_pinsker(rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d)))

    @pytest.mark.slow
    def test_ten_thousand_pairs(self, rng):
        for _ in range(10_000):
            d = int(rng.integers(1, 7))
            check_pinsker(rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d)))


class TestEstimationBound:
    """(k+1)^{d(d-1)/2} exp(-k D(lambda/k || r))."""

    def test_matching_spectrum(self):
        r = Spectrum.of(Fraction(3, 4), Fraction(1, 4))
        assert estimation_bound(P(3, 1), r, 4) == pytest.approx(5.0)

    def test_single_row(self):
        r = Spectrum.of(0.7, 0.3)
        assert estimation_bound(P(4), r, 4) == pytest.approx(5 * math.exp(-4 * math.log(1 / 0.7)))

    def test_zero_when_support_missing(self):
        assert estimation_bound(P(1, 1), Spectrum.of(1, 0), 2) == 0.0

    def test_size_mismatch(self):
        with pytest.raises(InputError):
            estimation_bound(P(3), Spectrum.of(HALF, HALF), 2)

    def test_too_many_rows(self):
        with pytest.raises(InputError):
            estimation_bound(P(1, 1, 1), Spectrum.of(HALF, HALF), 3)

    @pytest.mark.parametrize("d", [2, 3])
    def test_bounds_measurement(self, rng, d):
        for _ in range(10):
            r = random_spectrum(rng, d)
            for k in range(1, 11):
                for lam in enumerate_partitions(k, d):
                    assert check_estimation_bound(lam, r, k)

    @pytest.mark.slow
    @pytest.mark.parametrize("d", [2, 3])
    def test_bounds_measurement_hundred_spectra(self, rng, d):
        for _ in range(100):
            r = random_spectrum(rng, d)
            for k in range(1, 11):
                for lam in enumerate_partitions(k, d):
                    check_estimation_bound(lam, r, k)


class TestConvergence:
    """lambda*/k approaches r."""

    def test_pure_spectrum(self):
        table = estimation_convergence(Spectrum.of(1, 0), range(1, 9))
        assert [row.diagram for row in table.rows] == [Partition(rows=(k,)) for k in range(1, 9)]
        assert all(row.distance == 0 for row in table.rows)
        assert table.fitted_constant == 0

    def test_uniform_with_kl_estimator(self):
        table = estimation_convergence(Spectrum.of(HALF, HALF), range(2, 9, 2), estimator=Estimator.KL)
        assert [row.diagram for row in table.rows] == [P(1, 1), P(2, 2), P(3, 3), P(4, 4)]
        assert all(row.distance == 0 for row in table.rows)

    def test_uniform_mode_prefers_symmetric_rows(self):
        """At two copies the symmetric subspace outweighs the antisymmetric one 3:1."""
        assert best_diagram(Spectrum.of(HALF, HALF), 2, "mode") == P(2)

    def test_rate(self):
        table = estimation_convergence(Spectrum.of(0.7, 0.3), range(4, 65), rate_constant=2.0)
        assert table.all_within_rate
        assert all(row.distance <= 2 / math.sqrt(row.k) for row in table.rows)
        assert table.fitted_constant <= 2.0

    def test_frame(self):
        frame = estimation_convergence(Spectrum.of(0.7, 0.3), [4, 8]).to_frame()
        assert list(frame.columns) == ["k", "diagram", "distance", "within_rate"]
        assert frame["k"].tolist() == [4, 8]
        assert frame["diagram"].tolist()[0] == "3,1"

    def test_invalid_k(self):
        with pytest.raises(InputError):
            estimation_convergence(Spectrum.of(1, 0), [0])


class TestConverseConstants:
    """Accuracy and KL budget of the converse construction."""

    def test_delta(self):
        assert converse_delta(2, 2, 1) == math.inf
        assert converse_delta(2, 2, 4) == pytest.approx(12 * math.sqrt(math.log(4) / 4))

    def test_delta_decreases(self):
        values = [converse_delta(2, 2, k) for k in (10, 100, 1000)]
        assert values == sorted(values, reverse=True)

    def test_kl_bound(self):
        expected = (3 * math.log(5) + 16 * math.log(4)) / 4
        assert converse_kl_bound(2, 2, 4, 3) == pytest.approx(expected)
