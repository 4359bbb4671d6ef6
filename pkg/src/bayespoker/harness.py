"""Tournaments, significance tests, learning analysis, and curve optimization.

Matches alternate the seating each game to cancel first-actor effects, and
every per-game RNG is derived from one master seed, so a match is
bit-reproducible including its CSV artifact.  Curve search is paired-sample
hill climbing: candidate and incumbent are always scored on the same block
of game seeds (common random numbers) to tame the very noisy win/loss
objective.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .decision import CurveParams
from .engine import GameRecord, play_game
from .matrices import ActionCountsStore, MatrixSet
from .players import BppPlayer, make_opponent


@dataclass
class MatchStats:
    """Per-game nets for the reference player plus summary significance stats."""

    nets: np.ndarray
    cumulative: np.ndarray
    n: int
    mean: float
    sd: float
    t: float
    p: float

    def summary(self) -> dict:
        return {"n": self.n, "mean": self.mean, "sd": self.sd, "t": self.t, "p": self.p}


def normal_two_tailed_p(t: float) -> float:
    """Two-tailed p under the normal approximation to the t distribution."""
    return math.erfc(abs(t) / math.sqrt(2.0))


def summarize_nets(nets: np.ndarray) -> MatchStats:
    nets = np.asarray(nets, dtype=float)
    n = len(nets)
    mean = float(nets.mean())
    sd = float(nets.std(ddof=1)) if n > 1 else 0.0
    if sd == 0.0:
        t = 0.0 if mean == 0.0 else math.copysign(math.inf, mean)
    else:
        t = mean / (sd / math.sqrt(n))
    return MatchStats(
        nets=nets,
        cumulative=np.cumsum(nets),
        n=n,
        mean=mean,
        sd=sd,
        t=t,
        p=normal_two_tailed_p(t),
    )


def game_seeds(master_seed: int, n: int) -> np.ndarray:
    return np.random.SeedSequence(master_seed).generate_state(n, dtype=np.uint64)


def run_match(
    agent_a,
    agent_b,
    games: int,
    seed: int,
    csv_path=None,
    opponent_kind: str = "",
    learn: bool = True,
) -> tuple[MatchStats, list[GameRecord]]:
    """Play N games, seats alternating; nets are from agent_a's perspective."""
    if games < 1:
        raise ValueError("games must be >= 1")
    seeds = game_seeds(seed, games)
    nets = np.zeros(games)
    records: list[GameRecord] = []
    for i in range(games):
        seat_a = i % 2
        pair = (agent_a, agent_b) if seat_a == 0 else (agent_b, agent_a)
        record = play_game(pair[0], pair[1], seed=int(seeds[i]))
        records.append(record)
        nets[i] = record.nets[seat_a]
        if learn:
            for agent, seat in ((agent_a, seat_a), (agent_b, 1 - seat_a)):
                observe = getattr(agent, "observe_showdown", None)
                if observe is not None:
                    observe(record, seat)
    stats = summarize_nets(nets)
    if csv_path is not None:
        write_match_csv(csv_path, stats, opponent_kind, seeds)
    return stats, records


def write_match_csv(path, stats: MatchStats, opponent_kind: str, seeds: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["game_index", "net", "cumulative", "opponent_kind", "seed"])
        for i, (net, cum) in enumerate(zip(stats.nets, stats.cumulative)):
            writer.writerow([i, int(net), int(cum), opponent_kind, int(seeds[i])])


def learning_effect(nets, early: int = 200, late: int = 200) -> dict:
    """Welch difference-of-means test between the first and last game windows."""
    nets = np.asarray(nets, dtype=float)
    if len(nets) < early + late:
        raise ValueError(f"need at least {early + late} games, have {len(nets)}")
    a, b = nets[:early], nets[-late:]
    mean_early, mean_late = float(a.mean()), float(b.mean())
    var_a = float(a.var(ddof=1))
    var_b = float(b.var(ddof=1))
    se = math.sqrt(var_a / early + var_b / late)
    t = 0.0 if se == 0.0 else (mean_late - mean_early) / se
    return {
        "mean_early": mean_early,
        "mean_late": mean_late,
        "t": t,
        "p": normal_two_tailed_p(t),
    }


# --- curve-parameter search -----------------------------------------------------


@dataclass
class AcceptedStep:
    iteration: int
    params: list[float]
    incumbent_score: float
    candidate_score: float


@dataclass
class HillClimbResult:
    best: np.ndarray
    audit: list[AcceptedStep] = field(default_factory=list)


def hill_climb(
    objective,
    x0: np.ndarray,
    iters: int,
    step_scale: float,
    rng: np.random.Generator,
) -> HillClimbResult:
    """Maximize a noisy objective(vector, block_seed) by paired perturbation.

    Every iteration draws a fresh seed block and scores incumbent and
    candidate on it; only a strict improvement moves the incumbent.
    """
    incumbent = np.asarray(x0, dtype=float).copy()
    result = HillClimbResult(best=incumbent)
    for it in range(iters):
        block_seed = int(rng.integers(0, 2**63 - 1))
        candidate = incumbent + rng.normal(0.0, step_scale, size=incumbent.shape)
        score_inc = objective(incumbent, block_seed)
        score_cand = objective(candidate, block_seed)
        if score_cand > score_inc:
            incumbent = candidate
            result.audit.append(
                AcceptedStep(it, [float(x) for x in candidate], score_inc, score_cand)
            )
    result.best = incumbent
    return result


def optimize_curves(
    matrices: MatrixSet,
    opponent_kind: str = "rules",
    iters: int = 100,
    games_per_eval: int = 200,
    step_scale: float = 0.05,
    seed: int = 0,
    start: CurveParams | None = None,
) -> tuple[CurveParams, HillClimbResult]:
    """Search the 12-parameter curve space against a fixed opponent kind.

    Evaluations run with learning off so candidate and incumbent see exactly
    the same opponent on exactly the same deals.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    start = start or CurveParams.default()

    def objective(vec: np.ndarray, block_seed: int) -> float:
        params = CurveParams.from_vector(vec)
        agent_rngs = np.random.SeedSequence(block_seed).spawn(2)
        bpp = BppPlayer(
            matrices,
            params,
            np.random.default_rng(agent_rngs[0]),
            counts_store=ActionCountsStore(),
            learning=False,
        )
        opp = make_opponent(opponent_kind, params, np.random.default_rng(agent_rngs[1]))
        stats, _ = run_match(bpp, opp, games_per_eval, seed=block_seed, learn=False)
        return stats.mean

    result = hill_climb(objective, start.as_vector(), iters, step_scale, np.random.default_rng(seed))
    return CurveParams.from_vector(result.best), result
