"""Per-round Bayesian network over hand types; exact posterior win probability.

Each betting round uses a small polytree: the opponent's final type generates
its current type, which generates the visible upcard type and the observed
action class; our own final type generates our observed current type; the two
final types drive the win node.  With the win node unobserved the two
branches are independent, so exact posteriors reduce to a prior reweighting
on our side and a 17x17 sum on the opponent's side; results match full joint
enumeration over the 17^3 states to machine precision (the test suite ships
that enumeration as an oracle).
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .cards import HandType17
from .engine import Action
from .matrices import MatrixSet


class ActionClass(IntEnum):
    CONSERVATIVE = 0  # pass or call
    AGGRESSIVE = 1  # bet or raise


class ZeroLikelihoodError(ValueError):
    """Evidence with zero probability under the current matrices."""


@dataclass(frozen=True)
class Evidence:
    bpp_current: HandType17
    opp_upcards: HandType17
    opp_action: ActionClass | None = None


@dataclass
class BeliefState:
    bpp_final: np.ndarray  # (17,)
    opp_final: np.ndarray  # (17,)
    opp_current: np.ndarray  # (17,)
    p_win: float


@dataclass
class NetworkRound:
    """One round's network: structure is fixed, matrices vary by round."""

    round_id: int
    final_prior: np.ndarray  # (17,)
    c_given_f: np.ndarray  # (17,17)
    u_given_c: np.ndarray  # (17,17)
    a_given_c: np.ndarray  # (17,2)
    win: np.ndarray  # (17,17)

    @classmethod
    def build(cls, mset: MatrixSet, action_matrix: np.ndarray, round_id: int) -> "NetworkRound":
        return cls(
            round_id=round_id,
            final_prior=mset.final_prior,
            c_given_f=mset.c_given_f[round_id - 1],
            u_given_c=mset.u_given_c[round_id - 1],
            a_given_c=action_matrix[round_id - 1],
            win=mset.win,
        )


def infer(net: NetworkRound, ev: Evidence) -> BeliefState:
    """Exact posteriors over both final types and the win probability."""
    bpp = net.final_prior * net.c_given_f[:, int(ev.bpp_current)]
    z_bpp = bpp.sum()
    if z_bpp <= 0.0:
        raise ZeroLikelihoodError("own current hand type has zero likelihood")
    bpp = bpp / z_bpp

    lik_current = net.u_given_c[:, int(ev.opp_upcards)].copy()
    if ev.opp_action is not None:
        lik_current *= net.a_given_c[:, int(ev.opp_action)]
    joint = net.final_prior[:, None] * net.c_given_f * lik_current[None, :]
    z_opp = joint.sum()
    if z_opp <= 0.0:
        raise ZeroLikelihoodError("opponent evidence has zero likelihood")
    opp_final = joint.sum(axis=1) / z_opp
    opp_current = joint.sum(axis=0) / z_opp

    p_win = float(bpp @ net.win @ opp_final)
    p_win = min(max(p_win, 0.0), 1.0)
    return BeliefState(bpp_final=bpp, opp_final=opp_final, opp_current=opp_current, p_win=p_win)


def action_class_of(history: list[Action]) -> ActionClass | None:
    """Evidence class of a round's opponent actions: the opening action rules.

    Pass/call are conservative, bet/raise aggressive.  An empty history means
    the opponent has not acted yet, so there is no action evidence.  A fold
    never reaches inference (the hand is over) and is rejected outright.

    The first action is prefix-stable: it reads the same mid-round (when
    decisions consume it) and at end of round (when showdown learning counts
    it), so the learned behaviour rows are exactly the conditional the live
    evidence is drawn from.  The latest action has no such property: a strong
    hand's raising war ends in the call that closes the round, which would be
    tallied as conservative.
    """
    if any(a is Action.FOLD for a in history):
        raise ValueError("fold in action history: no inference follows a fold")
    if not history:
        return None
    first = history[0]
    if first in (Action.PASS, Action.CALL):
        return ActionClass.CONSERVATIVE
    return ActionClass.AGGRESSIVE
