"""Pot odds, the calling threshold, and randomized betting curves.

The calling threshold theta is the win probability at which calling and
folding break even.  For two players with unit bets it is k/(c + 2k - 1),
where c is the current pot and k the expected cost of reaching the showdown.
Action weights come from three fixed-shape exponential curves in
d = p_win - theta, each shifted by a per-round tunable parameter:

    bet/raise: 1 / (1 + exp(-8 (d - f_b)))
    fold:      1 / (1 + exp( 8 (d + f_f)))
    call:      exp(-20 (d + f_c)^2) / 2

Weights are masked to the legal actions, normalized, and sampled.  In the
final round a sampled conservative action is overridden to a bet or raise
with probability 5% when aggression is legal (outright over-representation
bluffing).
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .engine import MAX_RAISES, Action

BLUFF_ROUND = 4
BLUFF_PROBABILITY = 0.05

BET_SLOPE = 8.0
FOLD_SLOPE = 8.0
CALL_SHARPNESS = 20.0
CALL_PEAK = 0.5


@dataclass(frozen=True)
class PotState:
    """Pot facts a decision depends on; two players, unit bets."""

    pot: int  # c: current pot size, antes included
    to_showdown: float  # k: expected further cost of reaching the showdown
    facing_bet: bool
    raises_this_round: int
    n_players: int = 2
    unit: float = 1.0


def expected_showdown_cost(round_id: int, unit: float = 1.0) -> float:
    """One unit per betting round still to play, the current one included."""
    return unit * (5 - round_id)


def threshold(pot: PotState) -> float:
    """Break-even calling probability: k / (c + 2k - u) for two players."""
    denom = pot.pot + 2.0 * pot.to_showdown - pot.unit
    if denom <= 0.0:
        raise ValueError(f"nonpositive pot-odds denominator: {denom}")
    return pot.to_showdown / denom


def pot_odds_variants(pot: PotState) -> dict[str, float]:
    """The three pot-odds formulas, naive to correct.

    'zadeh' assumes every player pays the same to reach the showdown;
    'midtable' knocks off half a unit for sitting mid-table; 'correct' notes
    a caller is last to match, costing a full extra unit.  Only the corrected
    form (via threshold) feeds live decisions.
    """
    c, k, n, u = pot.pot, pot.to_showdown, pot.n_players, pot.unit
    denoms = {
        "zadeh": c + (n - 1) * k,
        "midtable": c + (n - 1) * k - (n - 1) / 2.0 * u,
        "correct": c + k - u,
    }
    out = {}
    for name, denom in denoms.items():
        if denom <= 0.0:
            raise ValueError(f"nonpositive denominator in {name} pot odds: {denom}")
        out[name] = k / denom
    return out


def odds_to_probability(odds: float) -> float:
    """Standard odds -> probability: theta = odds / (1 + odds)."""
    return odds / (1.0 + odds)


@dataclass(frozen=True)
class RoundCurve:
    f_b: float
    f_f: float
    f_c: float


@dataclass(frozen=True)
class CurveParams:
    """The 12 curve-shift parameters: one (f_b, f_f, f_c) triple per round."""

    rounds: tuple[RoundCurve, RoundCurve, RoundCurve, RoundCurve]

    @classmethod
    def default(cls) -> "CurveParams":
        # Pre-optimization initialization; the stochastic search owns the final values.
        return cls(tuple(RoundCurve(0.10, 0.05, 0.05) for _ in range(4)))

    def for_round(self, round_id: int) -> RoundCurve:
        return self.rounds[round_id - 1]

    def as_vector(self) -> np.ndarray:
        return np.array([x for rc in self.rounds for x in (rc.f_b, rc.f_f, rc.f_c)])

    @classmethod
    def from_vector(cls, vec) -> "CurveParams":
        v = np.asarray(vec, dtype=float)
        if v.shape != (12,):
            raise ValueError("curve parameter vector must have 12 entries")
        return cls(tuple(RoundCurve(*v[3 * i : 3 * i + 3]) for i in range(4)))

    def save(self, path) -> None:
        doc = {
            str(r + 1): {"f_b": rc.f_b, "f_f": rc.f_f, "f_c": rc.f_c}
            for r, rc in enumerate(self.rounds)
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)

    @classmethod
    def load(cls, path) -> "CurveParams":
        with open(path) as fh:
            doc = json.load(fh)
        return cls(tuple(RoundCurve(**doc[str(r)]) for r in range(1, 5)))


def curve_weights(d: float, curve: RoundCurve) -> tuple[float, float, float]:
    """Unnormalized (bet_raise, fold, call) weights at d = p_win - theta."""
    bet = 1.0 / (1.0 + math.exp(-BET_SLOPE * (d - curve.f_b)))
    fold = 1.0 / (1.0 + math.exp(FOLD_SLOPE * (d + curve.f_f)))
    call = CALL_PEAK * math.exp(-CALL_SHARPNESS * (d + curve.f_c) ** 2)
    return bet, fold, call


def action_distribution(
    p_win: float, pot: PotState, params: CurveParams, round_id: int
) -> dict[Action, float]:
    """Normalized action probabilities after masking illegal actions.

    Folding is impossible with no bet outstanding (its mass joins the
    conservative action); a capped raise turns aggressive mass into a call.
    """
    d = p_win - threshold(pot)
    bet, fold, call = curve_weights(d, params.for_round(round_id))
    if pot.facing_bet:
        probs = {Action.CALL: call, Action.FOLD: fold}
        if pot.raises_this_round < MAX_RAISES:
            probs[Action.RAISE] = bet
        else:
            probs[Action.CALL] += bet
    else:
        probs = {Action.PASS: call + fold, Action.BET: bet}
    total = sum(probs.values())
    return {a: w / total for a, w in probs.items()}


def _legal_aggressive(pot: PotState) -> Action | None:
    if not pot.facing_bet:
        return Action.BET
    if pot.raises_this_round < MAX_RAISES:
        return Action.RAISE
    return None


def choose_action(
    p_win: float,
    pot: PotState,
    params: CurveParams,
    round_id: int,
    rng: np.random.Generator,
    bluff_probability: float = BLUFF_PROBABILITY,
) -> Action:
    """Sample an action from the betting curves, with the final-round bluff."""
    if not 0.0 <= p_win <= 1.0:
        raise ValueError(f"p_win out of range: {p_win}")
    dist = action_distribution(p_win, pot, params, round_id)
    actions = list(dist)
    weights = np.array([dist[a] for a in actions])
    action = actions[int(rng.choice(len(actions), p=weights / weights.sum()))]

    if (
        round_id == BLUFF_ROUND
        and bluff_probability > 0.0
        and action in (Action.PASS, Action.CALL)
    ):
        aggressive = _legal_aggressive(pot)
        if aggressive is not None and rng.random() < bluff_probability:
            return aggressive
    return action
