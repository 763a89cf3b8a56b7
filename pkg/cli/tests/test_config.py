"""Tests for the per-invocation run configuration."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from cli.config import RunConfig
from kronspec.shared.config import Settings


@pytest.fixture
def settings():
    return Settings()


class TestRunConfig:
    """Settings merged with command-line overrides."""

    def test_defaults(self, settings):
        cfg = RunConfig.from_settings(settings)
        assert cfg.bounds == (2, 2, 4)
        assert cfg.max_boxes == 12
        assert cfg.seed == 0
        assert cfg.threads == 1
        assert cfg.out is None
        assert cfg.tolerances.hull_distance == pytest.approx(0.02)

    def test_overrides(self, settings):
        cfg = RunConfig.from_settings(settings, seed=9, threads=4, out=Path("x.json"), feasibility=1e-6)
        assert (cfg.seed, cfg.threads, cfg.out) == (9, 4, Path("x.json"))
        assert cfg.tolerances.feasibility == 1e-6
        assert cfg.tolerances.pinsker_slack == settings.tol__pinsker_slack

    def test_mn_bound_follows_dimensions(self, settings):
        assert RunConfig.from_settings(settings, m=3, n=2).bounds == (3, 2, 6)
        assert RunConfig.from_settings(settings, m=3, n=2, mn_bound=4).bounds == (3, 2, 4)

    def test_environment_mn_bound_kept(self, monkeypatch):
        monkeypatch.setenv("KRON_BOUNDS__MN", "3")
        assert RunConfig.from_settings(Settings()).bounds == (2, 2, 3)

    def test_seed_zero_is_kept(self, monkeypatch):
        monkeypatch.setenv("KRON_RUN__SEED", "5")
        assert RunConfig.from_settings(Settings(), seed=0).seed == 0

    @pytest.mark.parametrize("key", ["feasibility", "hull_distance", "eig_clamp"])
    def test_tolerances_must_be_positive(self, settings, key):
        with pytest.raises(ValidationError):
            RunConfig.from_settings(settings, **{key: 0.0})

    def test_rows_must_be_positive(self, settings):
        with pytest.raises(ValidationError):
            RunConfig.from_settings(settings, m=0)

    def test_threads_must_be_positive(self, settings):
        with pytest.raises(ValidationError):
            RunConfig.from_settings(settings, threads=0)
