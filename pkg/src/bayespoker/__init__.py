"""Two-player five-card stud poker with a Bayesian-network player."""

from .cards import Card, HandType17, Suit, classify, classify_final, classify_partial, compare_hands
from .decision import CurveParams, PotState, choose_action, curve_weights, pot_odds_variants, threshold
from .engine import Action, Game, GameRecord, PlayerView, play_game
from .harness import learning_effect, optimize_curves, run_match
from .inference import ActionClass, BeliefState, Evidence, NetworkRound, action_class_of, infer
from .matrices import (
    ActionCountsStore,
    MatrixSet,
    estimate_all,
    estimate_deal_matrices,
    estimate_win_matrix,
    load_matrices,
    save_matrices,
)
from .players import BppPlayer, ProbabilisticPlayer, RuleBasedPlayer, estimate_equity

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionClass",
    "ActionCountsStore",
    "BeliefState",
    "BppPlayer",
    "Card",
    "CurveParams",
    "Evidence",
    "Game",
    "GameRecord",
    "HandType17",
    "MatrixSet",
    "NetworkRound",
    "PlayerView",
    "PotState",
    "ProbabilisticPlayer",
    "RuleBasedPlayer",
    "Suit",
    "action_class_of",
    "choose_action",
    "classify",
    "classify_final",
    "classify_partial",
    "compare_hands",
    "curve_weights",
    "estimate_all",
    "estimate_deal_matrices",
    "estimate_equity",
    "estimate_win_matrix",
    "infer",
    "learning_effect",
    "load_matrices",
    "optimize_curves",
    "play_game",
    "pot_odds_variants",
    "run_match",
    "save_matrices",
    "threshold",
]
