"""End-to-end tournament experiments against both automated opponents.

Estimates (or loads) the matrices, plays a seeded match against each
opponent with behaviour learning on, and prints the significance summary
plus the early/late learning comparison.  CSV artifacts land next to the
matrix file.

Usage:
    python scripts/run_experiments.py [--deals 1000000] [--games 20000]
        [--prob-games 2500] [--seed 2025] [--data-dir bayespoker_data]
        [--curves data/curves_tuned.json]
"""

import argparse
import json
import time
from pathlib import Path

import numpy as np

from bayespoker.decision import CurveParams
from bayespoker.harness import learning_effect, run_match
from bayespoker.matrices import ActionCountsStore, estimate_all, load_matrices, save_matrices
from bayespoker.players import BppPlayer, make_opponent


def ensure_matrices(path: Path, deals: int, seed: int):
    if path.exists():
        print(f"loading matrices from {path}")
        mset, _ = load_matrices(path)
        return mset
    print(f"estimating matrices: {deals:,} deals (seed {seed})")
    t0 = time.time()
    mset = estimate_all(deals, seed)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_matrices(path, mset)
    print(f"  done in {time.time() - t0:.1f}s -> {path}")
    return mset


def play(mset, curves, opponent_kind, games, warmup, seed, csv_path, samples):
    store = ActionCountsStore()
    rngs = np.random.SeedSequence(seed).spawn(2)
    bpp = BppPlayer(
        mset, curves, np.random.default_rng(rngs[0]),
        counts_store=store, opponent_id=opponent_kind,
    )
    opponent = make_opponent(opponent_kind, curves, np.random.default_rng(rngs[1]), samples=samples)
    if warmup:
        run_match(bpp, opponent, warmup, seed=seed + 7, opponent_kind=opponent_kind)
    t0 = time.time()
    stats, _ = run_match(bpp, opponent, games, seed=seed, csv_path=csv_path, opponent_kind=opponent_kind)
    elapsed = time.time() - t0
    summary = stats.summary()
    summary["learning_effect"] = learning_effect(stats.nets)
    print(f"\n=== BPP vs {opponent_kind} ({games:,} games, {elapsed:.0f}s) ===")
    print(json.dumps(summary, indent=2))
    print(f"csv: {csv_path}")
    return stats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--deals", type=int, default=1_000_000)
    parser.add_argument("--games", type=int, default=20_000, help="games vs the rule-based opponent")
    parser.add_argument("--prob-games", type=int, default=2_500, help="games vs the probabilistic opponent")
    parser.add_argument("--warmup", type=int, default=2_000, help="unscored learning games before each match")
    parser.add_argument("--seed", type=int, default=2025)
    parser.add_argument("--samples", type=int, default=10_000, help="equity samples per probabilistic decision")
    parser.add_argument("--data-dir", type=Path, default=Path("bayespoker_data"))
    parser.add_argument("--curves", type=Path, default=Path("data/curves_tuned.json"))
    args = parser.parse_args()

    mset = ensure_matrices(args.data_dir / "matrices.json", args.deals, seed=7)
    curves = CurveParams.load(args.curves) if args.curves.exists() else CurveParams.default()
    print(f"curves: {args.curves if args.curves.exists() else 'defaults'}")

    play(mset, curves, "rules", args.games, args.warmup, args.seed,
         args.data_dir / "match_rules.csv", args.samples)
    play(mset, curves, "prob", args.prob_games, min(args.warmup, 1500), args.seed,
         args.data_dir / "match_prob.csv", args.samples)


if __name__ == "__main__":
    main()
