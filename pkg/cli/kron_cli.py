#!/usr/bin/env python
"""kron - Kronecker coefficients and admissible bipartite spectra.

This Typer-based CLI ties the kronspec modules into reproducible runs:
- Kronecker coefficients and nonzero-triple enumeration
- Hull of normalized triples and sampled-spectra containment
- Spectrum estimation tables, generator candidates, scalings and witnesses
- The falsification suites

Usage:
    kron coeff 2,1 2,1 2,1
    kron --out hull.json polytope 12
    kron --seed 7 --out samples.csv sample 10000 --hull hull.json
    kron check --quick

Exit codes: 0 ok, 2 input error, 3 I/O error, 4 consistency error,
5 falsified theorem check.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pandas as pd
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.progress import track
from rich.table import Table

from cli.cache import cache_session
from cli.checks import SUITES, SuiteSizes
from cli.config import RunConfig
from cli.parsing import format_float, format_value, parse_spectral_triple, parse_spectrum
from kronspec.kronecker.src.coefficients import kronecker_coefficient
from kronspec.kronecker.src.semigroup import enumerate_kron, enumerate_kron_upto, extract_generators
from kronspec.kronecker.src.serialization import kron_set_to_json, triple_to_dict
from kronspec.partitions.src.young import parse_partition
from kronspec.polytope.src.hull import build_polytope, caratheodory, hull_distance
from kronspec.polytope.src.scaling import certificate_bound, find_scaling
from kronspec.polytope.src.serialization import hull_from_json, hull_to_json
from kronspec.shared.config import LogLevel, configure_logging, get_settings
from kronspec.shared.errors import ConsistencyError, FalsificationError, InputError
from kronspec.shared.models import DensityOperator, PolytopeV, SpectralTriple
from kronspec.spectra.src.density import maximally_entangled, sample_spectral_triples, spectral_triple
from kronspec.spectra.src.estimation import Estimator, check_estimation_bound, estimation_convergence
from kronspec.spectra.src.witness import find_witness_state

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="kron - Kronecker coefficients and admissible bipartite spectra",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)


def _one_line(e: BaseException) -> str:
    if isinstance(e, ValidationError):
        return e.errors()[0]["msg"]
    return " ".join(str(e).split())


@contextmanager
def _guard() -> Iterator[None]:
    """Map library exceptions to exit codes with a one-line diagnostic."""
    try:
        yield
    except (InputError, ValidationError) as e:
        typer.echo(f"error: {_one_line(e)}", err=True)
        raise typer.Exit(2)
    except OSError as e:
        typer.echo(f"I/O error: {_one_line(e)}", err=True)
        raise typer.Exit(3)
    except ConsistencyError as e:
        typer.echo(f"consistency error: {_one_line(e)}", err=True)
        raise typer.Exit(4)
    except FalsificationError as e:
        typer.echo(f"FALSIFIED: {_one_line(e)}", err=True)
        raise typer.Exit(5)


@contextmanager
def _session(ctx: typer.Context) -> Iterator[RunConfig]:
    cfg: RunConfig = ctx.obj
    with _guard(), cache_session(cfg.cache_path):
        yield cfg


def _report(cfg: RunConfig) -> Console:
    """Human-facing console: stderr while machine output goes to stdout."""
    return console if cfg.out else err_console


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        cfg.out.write_text(text)
    else:
        typer.echo(text, nl=False)


def _load_hull(path: Path) -> PolytopeV:
    return hull_from_json(path.read_text())


@app.callback()
def main(
    ctx: typer.Context,
    seed: int | None = typer.Option(None, "--seed", help="Base seed for every stochastic step"),
    threads: int | None = typer.Option(None, "--threads", "-t", help="Worker threads"),
    cache: Path | None = typer.Option(None, "--cache", help="Character/coefficient cache file"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write machine output here instead of stdout"),
    log_level: LogLevel | None = typer.Option(None, "--log-level", help="Logging level"),
    m: int | None = typer.Option(None, "--m", help="Row bound for mu / dimension of A"),
    n: int | None = typer.Option(None, "--n", help="Row bound for nu / dimension of B"),
    mn_bound: int | None = typer.Option(None, "--mn-bound", help="Row bound for lambda (default m*n)"),
    tol_feasibility: float | None = typer.Option(None, "--tol-feasibility", help="Floating LP feasibility slack"),
    tol_hull_distance: float | None = typer.Option(None, "--tol-hull-distance", help="Accepted sampled-triple distance"),
    tol_pinsker_slack: float | None = typer.Option(None, "--tol-pinsker-slack", help="Pinsker check slack"),
    tol_bound_slack: float | None = typer.Option(None, "--tol-bound-slack", help="Estimation bound slack"),
    tol_normalization: float | None = typer.Option(None, "--tol-normalization", help="Schur-Weyl sum slack"),
    tol_eig_clamp: float | None = typer.Option(None, "--tol-eig-clamp", help="Eigenvalue clamping threshold"),
) -> None:
    """Global options shared by all commands."""
    configure_logging(log_level)
    with _guard():
        ctx.obj = RunConfig.from_settings(
            get_settings(),
            m=m,
            n=n,
            mn_bound=mn_bound,
            seed=seed,
            threads=threads,
            cache_path=cache,
            out=out,
            feasibility=tol_feasibility,
            hull_distance=tol_hull_distance,
            pinsker_slack=tol_pinsker_slack,
            bound_slack=tol_bound_slack,
            normalization=tol_normalization,
            eig_clamp=tol_eig_clamp,
        )
    logger.debug(f"Run configuration: {ctx.obj}")


@app.command()
def coeff(
    ctx: typer.Context,
    mu: str = typer.Argument(..., help="First diagram, e.g. 2,1"),
    nu: str = typer.Argument(..., help="Second diagram"),
    lam: str = typer.Argument(..., metavar="LAMBDA", help="Third diagram"),
) -> None:
    """Print the Kronecker coefficient g(mu, nu, lambda).

    Examples:
        kron coeff 2,1 2,1 2,1
        kron coeff 3,1 2,2 2,1,1
    """
    with _session(ctx):
        g = kronecker_coefficient(parse_partition(mu), parse_partition(nu), parse_partition(lam))
    typer.echo(str(g))


@app.command("enumerate")
def enumerate_triples(
    ctx: typer.Context,
    k: int = typer.Argument(..., help="Number of boxes"),
    upto: bool = typer.Option(False, "--upto", help="Include every size from 1 to k"),
) -> None:
    """Write all nonzero triples of size k within the row bounds as JSON.

    Examples:
        kron enumerate 4
        kron --m 3 --n 3 --out kron6.json enumerate 6 --upto
    """
    with _session(ctx) as cfg:
        if upto:
            kron_set = enumerate_kron_upto(k, cfg.bounds, cfg.threads)
        else:
            kron_set = enumerate_kron(k, cfg.bounds, cfg.threads)
        _emit(cfg, kron_set_to_json(kron_set))
    _report(cfg).print(f"[green]✓[/green] {len(kron_set)} nonzero triples within bounds {cfg.bounds}")


@app.command()
def polytope(
    ctx: typer.Context,
    max_boxes: int | None = typer.Argument(None, metavar="K", help="Largest box count (default from settings)"),
) -> None:
    """Build the hull of normalized nonzero triples with at most K boxes.

    Examples:
        kron polytope 8
        kron --out hull12.json polytope 12
    """
    with _session(ctx) as cfg:
        k = cfg.max_boxes if max_boxes is None else max_boxes
        if k < 1:
            raise InputError(f"K must be >= 1, got {k}")
        poly = build_polytope(enumerate_kron_upto(k, cfg.bounds, cfg.threads))
        _emit(cfg, hull_to_json(poly))
    _report(cfg).print(
        f"[green]✓[/green] {poly.vertex_count} vertices, affine dimension {poly.affine_dim} (K={k}, bounds {cfg.bounds})"
    )


@app.command()
def sample(
    ctx: typer.Context,
    trials: int = typer.Argument(..., help="Number of random density operators"),
    hull: Path = typer.Option(..., "--hull", help="Hull JSON written by 'kron polytope'"),
    with_fixtures: bool = typer.Option(False, "--with-fixtures", help="Add product and maximally entangled states"),
) -> None:
    """Sample Hilbert-Schmidt random states and measure their distance to the hull.

    Writes one CSV row per state (seed, trial, m, n, rA, rB, rAB, hull_distance)
    and prints a summary of the distances.

    Examples:
        kron --seed 3 sample 1000 --hull hull12.json
        kron --out samples.csv sample 10000 --hull hull12.json --with-fixtures
    """
    with _session(ctx) as cfg:
        poly = _load_hull(hull)
        if poly.bounds != cfg.bounds:
            raise ConsistencyError(f"hull bounds {poly.bounds} do not match run bounds {cfg.bounds}")
        clamp = cfg.tolerances.eig_clamp

        labelled: list[tuple[str, SpectralTriple]] = []
        if with_fixtures:
            product_state = spectral_triple(_product_state(cfg.m, cfg.n), cfg.m, cfg.n, clamp=clamp)
            labelled.append(("product", product_state))
            if cfg.m == cfg.n:
                entangled = maximally_entangled(cfg.m).density()
                labelled.append(("entangled", spectral_triple(entangled, cfg.m, cfg.n, clamp=clamp)))
        labelled.extend(
            (str(i), triple)
            for i, triple in sample_spectral_triples(trials, cfg.m, cfg.n, seed=cfg.seed, clamp=clamp)
        )

        columns = (["seed", "trial", "m", "n"]
                   + [f"rA_{i}" for i in range(1, cfg.m + 1)]
                   + [f"rB_{i}" for i in range(1, cfg.n + 1)]
                   + [f"rAB_{i}" for i in range(1, cfg.m * cfg.n + 1)]
                   + ["hull_distance"])
        rows = []
        for label, triple in track(labelled, description="Measuring hull distances", console=err_console,
                                   disable=len(labelled) < 100):
            distance = hull_distance(triple, poly)
            rows.append([cfg.seed, label, cfg.m, cfg.n, *map(float, triple.flatten()), distance])
        frame = pd.DataFrame(rows, columns=columns)
        _emit(cfg, frame.to_csv(index=False, float_format="%.12g"))

    tol = cfg.tolerances.hull_distance
    distances = frame["hull_distance"]
    max_distance = float(distances.max()) if len(frame) else 0.0
    exceeding = int((distances > tol).sum())
    summary = Table(title="Hull distance summary", show_header=True, header_style="bold magenta")
    summary.add_column("States", justify="right", style="cyan")
    summary.add_column("Max L1 distance", justify="right")
    summary.add_column(f"Above {format_float(tol)}", justify="right", style="yellow")
    summary.add_row(str(len(frame)), format_float(max_distance), str(exceeding))
    _report(cfg).print(summary)


def _product_state(m: int, n: int) -> DensityOperator:
    """|0><0| on C^m (x) C^n."""
    matrix = np.zeros((m * n, m * n), dtype=complex)
    matrix[0, 0] = 1.0
    return DensityOperator.from_matrix(matrix)


@app.command()
def estimate(
    ctx: typer.Context,
    spectrum: str = typer.Argument(..., help="Spectrum, e.g. 0.7,0.3 or 1/2,1/2"),
    k_max: int = typer.Argument(..., help="Largest number of copies"),
    estimator: Estimator = typer.Option(
        Estimator.KL, "--estimator", "-e",
        help="Diagram selection rule: kl (default) picks the diagram with the largest estimation bound, "
             "mode the most probable measurement outcome",
    ),
) -> None:
    """Print how fast the estimated diagram lambda/k approaches the spectrum.

    The command line defaults to the kl rule; the library default is mode.

    Examples:
        kron estimate 0.7,0.3 64
        kron estimate 1/2,1/2 8 --estimator mode
    """
    with _session(ctx) as cfg:
        r = parse_spectrum(spectrum)
        if k_max < 1:
            raise InputError(f"k_max must be >= 1, got {k_max}")
        table = estimation_convergence(r, range(1, k_max + 1), estimator=estimator)
        bound_ok = [
            check_estimation_bound(row.diagram, r, row.k, slack=cfg.tolerances.bound_slack, strict=False)
            for row in table.rows
        ]
        frame = table.to_frame()
        frame["bound_check"] = ["pass" if ok else "fail" for ok in bound_ok]
        if cfg.out:
            cfg.out.write_text(frame.to_csv(index=False, float_format="%.12g"))

    out = Table(title=f"Estimation of r = {spectrum} ({estimator.value})", show_header=True,
                header_style="bold magenta")
    out.add_column("k", justify="right", style="cyan")
    out.add_column("λ*", style="green")
    out.add_column("‖λ*/k − r‖₁", justify="right")
    out.add_column(f"≤ {format_float(table.rate_constant)}/√k", justify="center")
    out.add_column("bound", justify="center")
    for row, ok in zip(table.rows, bound_ok):
        out.add_row(str(row.k), str(row.diagram), format_float(row.distance),
                    "yes" if row.within_rate else "no", "pass" if ok else "fail")
    console.print(out)
    console.print(f"fitted constant: {format_float(table.fitted_constant)}")


@app.command()
def generators(
    ctx: typer.Context,
    max_boxes: int | None = typer.Argument(None, metavar="K", help="Largest box count (default from settings)"),
) -> None:
    """Write the nonzero triples up to K that are not sums of smaller ones.

    Examples:
        kron generators 6
        kron --out gens.json generators 12
    """
    with _session(ctx) as cfg:
        k = cfg.max_boxes if max_boxes is None else max_boxes
        if k < 1:
            raise InputError(f"K must be >= 1, got {k}")
        gens = extract_generators(enumerate_kron_upto(k, cfg.bounds, cfg.threads))
        doc = {"bounds": list(cfg.bounds), "max_boxes": k, "generators": [triple_to_dict(t) for t in gens]}
        _emit(cfg, json.dumps(doc, indent=2) + "\n")
    _report(cfg).print(f"[green]✓[/green] {len(gens)} generator candidates up to K={k}")


@app.command()
def scale(
    ctx: typer.Context,
    triple: str = typer.Argument(..., help="Rational triple, e.g. 1/2,1/2;1/2,1/2;1/2,1/2,0,0"),
    hull: Path | None = typer.Option(None, "--hull", help="Hull JSON giving a Caratheodory certificate"),
    max_m: int | None = typer.Option(None, "--max-m", help="Largest scaling factor to try"),
) -> None:
    """Find the smallest m with g(m*rA, m*rB, m*rAB) > 0.

    Examples:
        kron scale "1/2,1/2;1/2,1/2;1,0,0,0" --max-m 4
        kron scale "2/3,1/3;2/3,1/3;2/3,1/3,0,0" --hull hull8.json
    """
    with _session(ctx):
        p = parse_spectral_triple(triple)
        cert = None
        if hull is not None:
            cert = caratheodory(p, _load_hull(hull))
            console.print(f"certificate: {len(cert.generators)} vertices, search bound {certificate_bound(cert)}")
            for weight, vertex in zip(cert.coefficients, cert.generators):
                console.print(f"  {format_value(weight)} × [{', '.join(format_value(c) for c in vertex)}]")
        result = find_scaling(p, cert=cert, max_m=max_m)
    if result is None:
        console.print("[yellow]no scaling found within the search bound[/yellow]")
        return
    t = result.triple
    typer.echo(f"m={result.m} mu={t.mu} nu={t.nu} lambda={t.lam} g={t.g}")


@app.command()
def witness(
    ctx: typer.Context,
    triple: str = typer.Argument(..., help="Target triple, e.g. 1/2,1/2;1/2,1/2;1,0,0,0"),
    restarts: int | None = typer.Option(None, "--restarts", "-r", help="Random restarts"),
    iterations: int | None = typer.Option(None, "--iterations", "-i", help="Sweeps per restart"),
    target_error: float = typer.Option(1e-10, "--target-error", help="Stop once this close"),
) -> None:
    """Search for a bipartite state with the given spectral triple.

    Examples:
        kron witness "1/2,1/2;1/2,1/2;1,0,0,0"
        kron --threads 4 witness "3/4,1/4;3/4,1/4;3/4,1/4,0,0" --restarts 50
    """
    with _session(ctx) as cfg:
        p = parse_spectral_triple(triple)
        m, n, _ = p.dims
        result = find_witness_state(p, m, n, iterations=iterations, seed=cfg.seed,
                                    restarts=restarts, threads=cfg.threads, target_error=target_error)
    out = Table(title="Witness state", show_header=True, header_style="bold magenta")
    out.add_column("Spectrum", style="cyan")
    out.add_column("Target")
    out.add_column("Achieved")
    for name, want, got in zip(("rA", "rB", "rAB"), (p.rA, p.rB, p.rAB), (result.triple.rA, result.triple.rB, result.triple.rAB)):
        out.add_row(name, ", ".join(format_value(x) for x in want.probs),
                    ", ".join(format_float(float(x)) for x in got.probs))
    console.print(out)
    typer.echo(f"error={format_float(result.error)} restart={result.restart}")


@app.command()
def check(
    ctx: typer.Context,
    suite: list[str] | None = typer.Option(None, "--suite", "-s", help=f"Suites to run: {', '.join(SUITES)}"),
    quick: bool = typer.Option(False, "--quick", "-q", help="Reduced sizes for a fast smoke run"),
) -> None:
    """Run the falsification suites; exit 5 on the first counterexample.

    Examples:
        kron check
        kron check --quick --suite pinsker --suite semigroup
    """
    names = suite or list(SUITES)
    sizes = SuiteSizes(oracle_k=4, orthogonality_k=5, identity_k=4, semigroup_boxes=5, stability_k=3,
                       spectra=10, bound_k=6, normalization_k=5, pinsker_pairs=500, entropy_k=4,
                       witness_k=2, witness_restarts=3, witness_iterations=40, sequence_k=5) if quick else SuiteSizes()

    console.print(Panel.fit("[bold cyan]kron - falsification suites[/bold cyan]", border_style="cyan"))
    results = Table(show_header=True, header_style="bold magenta")
    results.add_column("Suite", style="cyan")
    results.add_column("Checks", justify="right")
    results.add_column("Status", justify="center")
    with _session(ctx) as cfg:
        unknown = [name for name in names if name not in SUITES]
        if unknown:
            raise InputError(f"unknown suite(s): {', '.join(unknown)}")
        for name in names:
            count = SUITES[name](
                sizes,
                bounds=cfg.bounds,
                threads=cfg.threads,
                seed=cfg.seed,
                bound_slack=cfg.tolerances.bound_slack,
                normalization=cfg.tolerances.normalization,
                pinsker_slack=cfg.tolerances.pinsker_slack,
            )
            logger.info(f"Suite {name}: {count} checks passed")
            results.add_row(name, str(count), "[green]✓[/green]")
    console.print(results)


if __name__ == "__main__":
    app()
