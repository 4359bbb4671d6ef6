"""The automated players: Bayesian, combinatorial-probability, and rule-based.

All three share the engine's PlayerView/decide protocol and emit only legal
actions.  The Bayesian player composes type classification, network
inference, and the betting curves; the probabilistic player replaces
inference with straight Monte Carlo equity over card completions but plays
the same curves; the rule player encodes a small fixed maxim table.
"""

from dataclasses import dataclass

import numpy as np

from .cards import FULL_DECK, Card, HandType17, classify, classify_partial, hand_value, partial_hand_value
from .decision import BLUFF_PROBABILITY, CurveParams, PotState, choose_action, expected_showdown_cost
from .engine import MAX_RAISES, Action, GameRecord, PlayerView
from .fasteval import sample_from_pool, score_final_batch
from .inference import Evidence, NetworkRound, action_class_of, infer
from .matrices import ActionCountsStore, MatrixSet


def _pot_state(view: PlayerView) -> PotState:
    return PotState(
        pot=view.pot,
        to_showdown=expected_showdown_cost(view.round_id),
        facing_bet=view.facing_bet,
        raises_this_round=view.raises_this_round,
    )


class BppPlayer:
    """Bayesian player: infers P(win) from types, upcards, and behaviour."""

    kind = "bpp"

    def __init__(
        self,
        matrices: MatrixSet,
        curves: CurveParams,
        rng: np.random.Generator,
        counts_store: ActionCountsStore | None = None,
        opponent_id: str | None = None,
        learning: bool = True,
        bluff_probability: float = BLUFF_PROBABILITY,
    ):
        self.matrices = matrices
        self.curves = curves
        self.rng = rng
        self.counts_store = counts_store if counts_store is not None else ActionCountsStore()
        self.opponent_id = opponent_id
        self.learning = learning
        self.bluff_probability = bluff_probability

    def beliefs(self, view: PlayerView):
        own_type = classify([view.hole, *view.upcards])
        up_type = classify_partial(view.opp_upcards)
        action_ev = action_class_of(view.opp_actions_this_round)
        net = NetworkRound.build(
            self.matrices,
            self.counts_store.action_matrix_for(self.opponent_id),
            view.round_id,
        )
        return infer(net, Evidence(own_type, up_type, action_ev))

    def decide(self, view: PlayerView) -> Action:
        p_win = self.beliefs(view).p_win
        return choose_action(
            p_win, _pot_state(view), self.curves, view.round_id, self.rng, self.bluff_probability
        )

    def observe_showdown(self, record: GameRecord, my_seat: int) -> None:
        """Fold the opponent's revealed hand into the per-round action counts.

        Counted only for hands held to a showdown; one class per round, the
        same most-recent-action evidence the inference step uses live.
        """
        if not self.learning or not record.showdown or record.round_types is None:
            return
        opp = 1 - my_seat
        for round_id in range(1, 5):
            acts = [a for seat, a, r in record.history if seat == opp and r == round_id]
            cls = action_class_of(acts)
            if cls is None:
                continue
            opp_type = record.round_types[opp][round_id - 1]
            self.counts_store.update(self.opponent_id, round_id, opp_type, cls)


def estimate_equity(
    own_cards: list[Card],
    opp_upcards: list[Card],
    rng: np.random.Generator,
    samples: int,
) -> float:
    """Monte Carlo win probability from card completions alone.

    Completes the own hand to five cards and gives the opponent a random hole
    card plus completions from the unseen deck; ties count half.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    seen = set(own_cards) | set(opp_upcards)
    pool = np.array([c.index for c in FULL_DECK if c not in seen], dtype=np.int8)
    need_own = 5 - len(own_cards)
    need_opp = 5 - len(opp_upcards)
    draws = sample_from_pool(rng, pool, samples, need_own + need_opp)
    own_known = np.array([c.index for c in own_cards], dtype=np.int8)
    opp_known = np.array([c.index for c in opp_upcards], dtype=np.int8)
    own = np.hstack([np.tile(own_known, (samples, 1)), draws[:, :need_own]])
    opp = np.hstack([np.tile(opp_known, (samples, 1)), draws[:, need_own:]])
    s_own = score_final_batch(own)
    s_opp = score_final_batch(opp)
    return float(np.mean((s_own > s_opp) + 0.5 * (s_own == s_opp)))


class ProbabilisticPlayer:
    """Equity-by-simulation player; same betting curves, no opponent model."""

    kind = "probabilistic"

    def __init__(
        self,
        curves: CurveParams,
        rng: np.random.Generator,
        samples: int = 10_000,
        bluff_probability: float = BLUFF_PROBABILITY,
    ):
        self.curves = curves
        self.rng = rng
        self.samples = samples
        self.bluff_probability = bluff_probability

    def decide(self, view: PlayerView) -> Action:
        p_win = estimate_equity([view.hole, *view.upcards], view.opp_upcards, self.rng, self.samples)
        return choose_action(
            p_win, _pot_state(view), self.curves, view.round_id, self.rng, self.bluff_probability
        )


@dataclass(frozen=True)
class RuleProbs:
    """Branch probabilities of the rule table, named so variants can be A/B tested."""

    bet_when_type_ahead: float = 0.90
    bet_when_value_ahead: float = 0.80
    surrender_when_beaten: float = 0.85
    raise_when_hidden_strength: float = 0.85
    call_down: float = 0.85


class RuleBasedPlayer:
    """Fixed maxim table keyed on showing-vs-showing and hand-vs-showing.

    With the stronger board: bet when the full hand beats the opponent's
    board (more often when strictly ahead by type), give up when the board
    overstates the hand.  With the weaker board: bet into the opponent when
    unchallenged, raise a hidden strong hand, otherwise mostly call down.
    """

    kind = "rule_based"

    def __init__(self, rng: np.random.Generator, probs: RuleProbs = RuleProbs()):
        self.rng = rng
        self.probs = probs

    def decide(self, view: PlayerView) -> Action:
        my_up_t = classify_partial(view.upcards)
        adv_up_t = classify_partial(view.opp_upcards)
        own_cards = [view.hole, *view.upcards]
        my_val = hand_value(own_cards) if len(own_cards) == 5 else partial_hand_value(own_cards)
        adv_up_val = partial_hand_value(view.opp_upcards)
        facing = view.facing_bet
        p = self.probs

        if my_up_t > adv_up_t:
            if my_val > adv_up_val:
                chance = p.bet_when_type_ahead if my_val.type17 > adv_up_t else p.bet_when_value_ahead
                if self.rng.random() < chance:
                    return self._aggressive(view)
                return Action.CALL if facing else Action.PASS
            if self.rng.random() < p.surrender_when_beaten:
                return Action.FOLD if facing else Action.PASS
            return Action.CALL if facing else Action.PASS

        if facing:
            if my_val.type17 > adv_up_t:
                if self.rng.random() < p.raise_when_hidden_strength:
                    return self._aggressive(view)
                return Action.CALL
            if self.rng.random() < p.call_down:
                return Action.CALL
            return Action.FOLD
        return Action.BET

    def _aggressive(self, view: PlayerView) -> Action:
        if not view.facing_bet:
            return Action.BET
        if view.raises_this_round < MAX_RAISES:
            return Action.RAISE
        return Action.CALL


class ScriptedThresholdPlayer:
    """Deterministic probe opponent: aggressive iff current type >= a pair.

    Never folds and never bluffs, so its behaviour is a perfectly learnable
    function of its hand type.
    """

    kind = "scripted_threshold"

    def __init__(self, threshold_type: HandType17 = HandType17.PAIR_LOW):
        self.threshold_type = threshold_type

    def decide(self, view: PlayerView) -> Action:
        strong = classify([view.hole, *view.upcards]) >= self.threshold_type
        if view.facing_bet:
            if strong and view.raises_this_round < MAX_RAISES:
                return Action.RAISE
            return Action.CALL
        return Action.BET if strong else Action.PASS


def make_opponent(kind: str, curves: CurveParams, rng: np.random.Generator, samples: int = 10_000):
    """Opponent factory for the CLI/harness: 'prob' or 'rules'."""
    if kind in ("prob", "probabilistic"):
        return ProbabilisticPlayer(curves, rng, samples=samples)
    if kind in ("rules", "rule_based"):
        return RuleBasedPlayer(rng)
    if kind == "scripted_threshold":
        return ScriptedThresholdPlayer()
    raise ValueError(f"unknown opponent kind: {kind!r}")
