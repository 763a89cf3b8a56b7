"""Tests for the kron command line."""

import json

import pandas as pd
import pytest
from typer.testing import CliRunner

from cli.checks import SUITES
from cli.kron_cli import app
from kronspec.shared.errors import FalsificationError

runner = CliRunner()


@pytest.fixture
def hull_k2(tmp_path):
    """Hull JSON for K=2 under the default bounds (2,2,4)."""
    path = tmp_path / "hull2.json"
    result = runner.invoke(app, ["--out", str(path), "polytope", "2"])
    assert result.exit_code == 0
    return path


def test_cli_coeff_standard_cubed():
    """Test that the standard representation appears once in its own square."""
    result = runner.invoke(app, ["coeff", "2,1", "2,1", "2,1"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "1"


def test_cli_coeff_zero():
    """Test a vanishing coefficient."""
    result = runner.invoke(app, ["coeff", "1,1", "1,1", "1,1"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "0"


def test_cli_coeff_size_mismatch():
    """Test that diagrams of different sizes exit with code 2."""
    result = runner.invoke(app, ["coeff", "2", "2,1", "2,1"])
    assert result.exit_code == 2
    assert "size mismatch" in result.output


def test_cli_coeff_malformed_partition():
    """Test that unparseable partition text exits with code 2."""
    result = runner.invoke(app, ["coeff", "2,a", "2,1", "2,1"])
    assert result.exit_code == 2


def test_cli_enumerate_k2(tmp_path):
    """Test that k=2 gives four nonzero triples under (2,2,4)."""
    out = tmp_path / "kron2.json"
    result = runner.invoke(app, ["--out", str(out), "enumerate", "2"])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["bounds"] == [2, 2, 4]
    assert len(doc["triples"]) == 4
    assert "4 nonzero triples" in result.stdout


def test_cli_enumerate_k0(tmp_path):
    """Test that k=0 writes an empty triple list."""
    out = tmp_path / "kron0.json"
    result = runner.invoke(app, ["--out", str(out), "enumerate", "0"])
    assert result.exit_code == 0
    assert json.loads(out.read_text())["triples"] == []


def test_cli_enumerate_upto(tmp_path):
    """Test that --upto collects every size."""
    out = tmp_path / "kron.json"
    result = runner.invoke(app, ["--out", str(out), "enumerate", "2", "--upto"])
    assert result.exit_code == 0
    assert len(json.loads(out.read_text())["triples"]) == 5


def test_cli_unwritable_output(tmp_path):
    """Test that a missing output directory exits with code 3."""
    out = tmp_path / "missing" / "kron.json"
    result = runner.invoke(app, ["--out", str(out), "enumerate", "1"])
    assert result.exit_code == 3


def test_cli_polytope_k1(tmp_path):
    """Test that K=1 gives a single vertex."""
    out = tmp_path / "hull1.json"
    result = runner.invoke(app, ["--out", str(out), "polytope", "1"])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 1
    assert doc["vertices"][0][:2] == ["1/1", "0/1"]
    assert "1 vertices" in result.stdout


def test_cli_polytope_is_deterministic(tmp_path):
    """Test that repeated runs write byte-identical hulls."""
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    runner.invoke(app, ["--out", str(first), "polytope", "3"])
    runner.invoke(app, ["--threads", "2", "--out", str(second), "polytope", "3"])
    assert first.read_bytes() == second.read_bytes()


def test_cli_polytope_rejects_zero(tmp_path):
    """Test that K=0 exits with code 2."""
    result = runner.invoke(app, ["--out", str(tmp_path / "h.json"), "polytope", "0"])
    assert result.exit_code == 2


def test_cli_sample_zero_trials(tmp_path, hull_k2):
    """Test that zero trials writes only the CSV header."""
    out = tmp_path / "samples.csv"
    result = runner.invoke(app, ["--out", str(out), "sample", "0", "--hull", str(hull_k2)])
    assert result.exit_code == 0
    lines = out.read_text().strip().splitlines()
    assert lines == ["seed,trial,m,n,rA_1,rA_2,rB_1,rB_2,rAB_1,rAB_2,rAB_3,rAB_4,hull_distance"]
    assert "Hull distance summary" in result.stdout


def test_cli_sample_fixtures_inside(tmp_path, hull_k2):
    """Test that the product and maximally entangled fixtures lie in the K=2 hull."""
    out = tmp_path / "samples.csv"
    result = runner.invoke(app, ["--out", str(out), "sample", "0", "--hull", str(hull_k2), "--with-fixtures"])
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    assert list(frame["trial"]) == ["product", "entangled"]
    assert (frame["hull_distance"] <= 1e-9).all()


@pytest.mark.slow
def test_cli_sample_ten_thousand_against_twelve_box_hull(tmp_path):
    """Test that 10^4 random qubit pairs lie within 0.02 of the K=12 hull."""
    hull, out = tmp_path / "hull12.json", tmp_path / "samples.csv"
    assert runner.invoke(app, ["--out", str(hull), "polytope", "12"]).exit_code == 0
    result = runner.invoke(app, ["--out", str(out), "sample", "10000", "--hull", str(hull)])
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    assert len(frame) == 10_000
    assert frame["hull_distance"].max() <= 0.02


def test_cli_sample_is_deterministic(tmp_path, hull_k2):
    """Test that a fixed seed reproduces the CSV byte for byte."""
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        result = runner.invoke(app, ["--seed", "11", "--out", str(out), "sample", "5", "--hull", str(hull_k2)])
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()
    frame = pd.read_csv(first)
    assert len(frame) == 5
    assert (frame["seed"] == 11).all()


def test_cli_sample_bounds_mismatch(tmp_path, hull_k2):
    """Test that a hull built for other bounds exits with code 4."""
    result = runner.invoke(app, ["--m", "3", "--n", "3", "--out", str(tmp_path / "s.csv"),
                                 "sample", "1", "--hull", str(hull_k2)])
    assert result.exit_code == 4


def test_cli_sample_missing_hull(tmp_path):
    """Test that a missing hull file exits with code 3."""
    result = runner.invoke(app, ["sample", "1", "--hull", str(tmp_path / "nope.json")])
    assert result.exit_code == 3


def test_cli_estimate_pure_spectrum(tmp_path):
    """Test that a pure spectrum is estimated exactly at every k."""
    out = tmp_path / "estimate.csv"
    result = runner.invoke(app, ["--out", str(out), "estimate", "1,0", "8"])
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    assert list(frame["k"]) == list(range(1, 9))
    assert (frame["distance"] == 0).all()
    assert (frame["bound_check"] == "pass").all()


def test_cli_estimate_uniform_even_k(tmp_path):
    """Test that the uniform qubit spectrum is hit exactly at even k."""
    out = tmp_path / "estimate.csv"
    result = runner.invoke(app, ["--out", str(out), "estimate", "0.5,0.5", "8"])
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    assert (frame.loc[frame["k"] % 2 == 0, "distance"] == 0).all()


def test_cli_estimate_prints_table():
    """Test that the table and fitted constant are printed."""
    result = runner.invoke(app, ["estimate", "0.7,0.3", "16", "--estimator", "mode"])
    assert result.exit_code == 0
    assert "fitted constant" in result.stdout


def test_cli_estimate_help_names_default_rule():
    """Test that the estimate help states which selection rule is the default."""
    result = runner.invoke(app, ["estimate", "--help"], env={"COLUMNS": "200", "NO_COLOR": "1"})
    assert result.exit_code == 0
    assert "kl (default)" in result.stdout
    assert "most probable" in result.stdout


def test_cli_estimate_non_normalized():
    """Test that a spectrum not summing to one exits with code 2."""
    result = runner.invoke(app, ["estimate", "0.5,0.6", "4"])
    assert result.exit_code == 2


def test_cli_generators(tmp_path):
    """Test generator candidates for K=2 under (2,2,4)."""
    out = tmp_path / "gens.json"
    result = runner.invoke(app, ["--out", str(out), "generators", "2"])
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    found = {(t["mu"], t["nu"], t["lambda"]) for t in doc["generators"]}
    assert ("1,1", "1,1", "2") in found
    assert ("1,1", "2", "1,1") in found
    assert ("2", "1,1", "1,1") in found
    assert ("2", "2", "2") not in found


def test_cli_generators_k1(tmp_path):
    """Test that K=1 has a single generator."""
    out = tmp_path / "gens.json"
    result = runner.invoke(app, ["--out", str(out), "generators", "1"])
    assert result.exit_code == 0
    assert len(json.loads(out.read_text())["generators"]) == 1


def test_cli_scale_entangled():
    """Test that the maximally entangled qubit triple scales at m=2."""
    result = runner.invoke(app, ["scale", "1/2,1/2;1/2,1/2;1,0,0,0", "--max-m", "4"])
    assert result.exit_code == 0
    assert "m=2 mu=1,1 nu=1,1 lambda=2 g=1" in result.stdout


def test_cli_scale_with_hull(hull_k2):
    """Test scaling through a Caratheodory certificate."""
    result = runner.invoke(app, ["scale", "1/2,1/2;1/2,1/2;1,0,0,0", "--hull", str(hull_k2)])
    assert result.exit_code == 0
    assert "certificate" in result.stdout
    assert "m=2" in result.stdout


def test_cli_scale_max_m_with_hull(tmp_path):
    """Test that --max-m bounds the search even when a hull certificate is given."""
    hull = tmp_path / "hull4.json"
    assert runner.invoke(app, ["--out", str(hull), "polytope", "4"]).exit_code == 0
    balanced = "1/2,1/2;1/2,1/2;1/2,1/2,0,0"

    result = runner.invoke(app, ["scale", balanced, "--hull", str(hull), "--max-m", "8"])
    assert result.exit_code == 0
    assert "m=4 mu=2,2 nu=2,2 lambda=2,2 g=1" in result.stdout

    result = runner.invoke(app, ["scale", balanced, "--hull", str(hull)])
    assert result.exit_code == 0
    assert "m=4" in result.stdout


def test_cli_scale_needs_bound():
    """Test that a scaling search without any bound exits with code 2."""
    result = runner.invoke(app, ["scale", "1,0;1,0;1,0,0,0"])
    assert result.exit_code == 2


def test_cli_scale_malformed_triple():
    """Test that a triple with two parts exits with code 2."""
    result = runner.invoke(app, ["scale", "1,0;1,0", "--max-m", "2"])
    assert result.exit_code == 2


def test_cli_witness_runs():
    """Test that the witness search reports its error."""
    result = runner.invoke(app, ["witness", "1,0;1,0;1,0,0,0", "--restarts", "2", "--iterations", "20"])
    assert result.exit_code == 0
    assert "error=" in result.stdout


def test_cli_check_quick():
    """Test that the reduced suites pass."""
    result = runner.invoke(app, ["check", "--quick", "--suite", "characters", "--suite", "pinsker",
                                 "--suite", "semigroup"])
    assert result.exit_code == 0
    assert "characters" in result.stdout
    assert "pinsker" in result.stdout


def test_cli_check_unknown_suite():
    """Test that an unknown suite name exits with code 2."""
    result = runner.invoke(app, ["check", "--suite", "nonsense"])
    assert result.exit_code == 2


def test_cli_check_falsification_exit_code(monkeypatch):
    """Test that a falsified check exits with code 5."""
    def falsified(sizes, **_):
        raise FalsificationError("forced counterexample", {"case": 1})

    monkeypatch.setitem(SUITES, "pinsker", falsified)
    result = runner.invoke(app, ["check", "--suite", "pinsker"])
    assert result.exit_code == 5
    assert "forced counterexample" in result.output


def test_cli_check_approximation_quick():
    """Test that nonzero triples and sampled spectra agree within delta on a quick run."""
    result = runner.invoke(app, ["check", "--quick", "--suite", "approximation"])
    assert result.exit_code == 0
    assert "approximation" in result.stdout


def test_cli_check_approximation_past_delta(monkeypatch):
    """Test that a spectrum missing every triple by more than delta exits with code 5."""
    monkeypatch.setattr("kronspec.kronecker.src.approximation.converse_delta", lambda m, n, k: 0.0)
    result = runner.invoke(app, ["check", "--quick", "--suite", "approximation"])
    assert result.exit_code == 5


def test_cli_rejects_nonpositive_tolerance():
    """Test that a nonpositive tolerance override exits with code 2."""
    result = runner.invoke(app, ["--tol-feasibility", "0", "coeff", "1", "1", "1"])
    assert result.exit_code == 2


def test_cli_rejects_zero_rows():
    """Test that m=0 exits with code 2."""
    result = runner.invoke(app, ["--m", "0", "coeff", "1", "1", "1"])
    assert result.exit_code == 2
