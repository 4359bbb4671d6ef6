"""Command-line surface: matrix estimation, simulation, optimization, serving."""

import json
import sys
from pathlib import Path

import click
import numpy as np

from .cards import CATEGORY9_NAMES, CATEGORY9_OF_TYPE, REFERENCE_CATEGORY_PROBS
from .decision import CurveParams
from .harness import learning_effect, optimize_curves, run_match
from .matrices import ActionCountsStore, estimate_all, load_matrices, save_matrices
from .players import BppPlayer, make_opponent
from .service import data_dir


def default_matrix_path() -> Path:
    return data_dir() / "matrices.json"


@click.group()
def main():
    """Five-card stud with a Bayesian-network player."""


@main.command("estimate-matrices")
@click.option("--deals", "-n", type=int, default=10_000_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output matrix file")
def cli_estimate_matrices(deals, seed, out):
    """Estimate all deal matrices and the win matrix; write the matrix file."""
    if deals < 1:
        raise click.BadParameter("--deals must be >= 1")
    out = Path(out) if out else default_matrix_path()
    out.parent.mkdir(parents=True, exist_ok=True)
    mset = estimate_all(deals, seed)
    save_matrices(out, mset)
    click.echo(f"wrote {out}")
    cat9 = np.zeros(9)
    for t in range(17):
        cat9[CATEGORY9_OF_TYPE[t]] += mset.final_prior[t]
    click.echo(f"{'category':<16}{'estimated':>12}{'reference':>12}{'diff':>12}")
    for i, name in enumerate(CATEGORY9_NAMES):
        ref = REFERENCE_CATEGORY_PROBS[name]
        click.echo(f"{name:<16}{cat9[i]:>12.7f}{ref:>12.7f}{cat9[i] - ref:>12.7f}")


@main.command("simulate")
@click.option("--opponent", type=click.Choice(["prob", "rules", "scripted_threshold"]), required=True)
@click.option("--games", "-n", type=int, default=2000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--matrices", "matrices_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--curves", "curves_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--learning", type=click.Choice(["on", "off"]), default="on", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV output path")
@click.option("--samples", type=int, default=10_000, show_default=True, help="Equity samples for the prob opponent")
def cli_simulate(opponent, games, seed, matrices_path, curves_path, learning, out, samples):
    """Run a BPP-vs-opponent match; print the JSON summary."""
    mset, store = _load(matrices_path)
    curves = CurveParams.load(curves_path) if curves_path else CurveParams.default()
    rngs = np.random.SeedSequence(seed).spawn(2)
    bpp = BppPlayer(
        mset,
        curves,
        np.random.default_rng(rngs[0]),
        counts_store=store,
        opponent_id=opponent,
        learning=learning == "on",
    )
    opp = make_opponent(opponent, curves, np.random.default_rng(rngs[1]), samples=samples)
    stats, _ = run_match(
        bpp, opp, games, seed=seed, csv_path=out, opponent_kind=opponent, learn=learning == "on"
    )
    summary = stats.summary()
    if games >= 400:
        summary["learning_effect"] = learning_effect(stats.nets)
    click.echo(json.dumps(summary, indent=2))


@main.command("optimize")
@click.option("--iters", "-k", type=int, default=100, show_default=True)
@click.option("--games-per-eval", "-g", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--opponent", type=click.Choice(["prob", "rules"]), default="rules", show_default=True)
@click.option("--matrices", "matrices_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--step-scale", type=float, default=0.05, show_default=True)
def cli_optimize(iters, games_per_eval, seed, out, opponent, matrices_path, step_scale):
    """Stochastic search of the 12 curve parameters; write curves + audit trail."""
    mset, _ = _load(matrices_path)
    params, result = optimize_curves(
        mset, opponent, iters=iters, games_per_eval=games_per_eval, step_scale=step_scale, seed=seed
    )
    params.save(out)
    audit_path = Path(out).with_suffix(".audit.json")
    with open(audit_path, "w") as fh:
        json.dump(
            [
                {
                    "iteration": s.iteration,
                    "params": s.params,
                    "incumbent_score": s.incumbent_score,
                    "candidate_score": s.candidate_score,
                }
                for s in result.audit
            ],
            fh,
            indent=2,
        )
    click.echo(f"wrote {out} ({len(result.audit)} accepted steps; audit in {audit_path})")


@main.command("serve")
@click.option("--port", "-p", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--matrices", "matrices_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--curves", "curves_path", type=click.Path(exists=True, dir_okay=False), default=None)
def cli_serve(port, host, matrices_path, curves_path):
    """Serve live human-vs-BPP games over HTTP + WebSocket."""
    import uvicorn

    from .service import create_app

    mset, store = _load(matrices_path)
    curves = CurveParams.load(curves_path) if curves_path else CurveParams.default()
    frontend = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    app = create_app(mset, curves, counts_store=store, frontend_dir=frontend)
    uvicorn.run(app, host=host, port=port)


def _load(matrices_path):
    path = Path(matrices_path) if matrices_path else default_matrix_path()
    if not path.exists():
        click.echo(
            f"no matrix file at {path}; run `bayespoker estimate-matrices` first", err=True
        )
        sys.exit(2)
    return load_matrices(path)


if __name__ == "__main__":
    main()
