"""Authoritative two-player five-card stud game: dealing, betting, settlement.

Fixed-limit, one-unit bets and raises, at most three raises per betting
round, one unit ante each.  Card 1 is dealt down, cards 2-5 up; a betting
round follows each up card, opened by the best hand showing.  The Game class
is a stepwise state machine (submit one action at a time) so both scripted
agents and a live service can drive it; play_game is the closed-loop driver
for in-process agents.
"""

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .cards import Card, Deck, HandType17, classify, classify_partial, compare_hands

MAX_RAISES = 3


class Action(str, Enum):
    PASS = "PASS"
    BET = "BET"
    CALL = "CALL"
    RAISE = "RAISE"
    FOLD = "FOLD"


class Phase(str, Enum):
    DEALING = "dealing"
    BETTING = "betting"
    SHOWDOWN = "showdown"
    SETTLED = "settled"
    FOLDED = "folded"


class IllegalActionError(ValueError):
    """An action that the rules do not allow in the current state."""


@dataclass
class PlayerView:
    """Everything one seat may legally see; never the opponent's hole card."""

    seat: int
    hole: Card
    upcards: list[Card]
    opp_upcards: list[Card]
    round_id: int
    pot: int
    facing_bet: bool
    raises_this_round: int
    opp_actions_this_round: list[Action]
    history: list[tuple[int, Action, int]]


@dataclass
class GameRecord:
    """Auditable record of one game; serializes to a single JSON line."""

    seed: int | None
    hands: tuple[tuple[Card, ...], tuple[Card, ...]]
    history: list[tuple[int, Action, int]]
    winner: int | None  # seat, None on tie
    tie: bool
    fold_by: int | None
    forfeit: bool
    nets: tuple[int, int]
    showdown: bool
    # Per seat, per round: 17-type of that player's first r+1 cards.
    # Populated only when the game reached a showdown.
    round_types: tuple[tuple[HandType17, ...], ...] | None

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "hands": [[str(c) for c in h] for h in self.hands],
                "history": [[seat, act.value, rnd] for seat, act, rnd in self.history],
                "winner": self.winner,
                "tie": self.tie,
                "fold_by": self.fold_by,
                "forfeit": self.forfeit,
                "nets": list(self.nets),
                "showdown": self.showdown,
                "round_types": None
                if self.round_types is None
                else [[int(t) for t in row] for row in self.round_types],
            }
        )

    @classmethod
    def from_json_line(cls, line: str) -> "GameRecord":
        d = json.loads(line)
        return cls(
            seed=d["seed"],
            hands=tuple(tuple(Card.parse(s) for s in h) for h in d["hands"]),
            history=[(seat, Action(act), rnd) for seat, act, rnd in d["history"]],
            winner=d["winner"],
            tie=d["tie"],
            fold_by=d["fold_by"],
            forfeit=d["forfeit"],
            nets=tuple(d["nets"]),
            showdown=d["showdown"],
            round_types=None
            if d["round_types"] is None
            else tuple(tuple(HandType17(t) for t in row) for row in d["round_types"]),
        )


class Game:
    """One five-card stud game between seats 0 and 1."""

    def __init__(self, rng: np.random.Generator, ante: int = 1, unit: int = 1, seed: int | None = None):
        self.ante = ante
        self.unit = unit
        self.seed = seed
        deck = Deck(rng)
        dealt = deck.deal(10)
        # Dealt one card at a time around the table: seat 0, seat 1, repeat.
        self.hands: tuple[list[Card], list[Card]] = (dealt[0::2], dealt[1::2])
        self.round_id = 1
        self.pot = 2 * ante
        self.contrib = [ante, ante]
        self.history: list[tuple[int, Action, int]] = []
        self.phase = Phase.BETTING
        self.winner: int | None = None
        self.tie = False
        self.fold_by: int | None = None
        self.forfeited = False
        self._start_round()

    # -- visible cards ----------------------------------------------------

    def upcards(self, seat: int) -> list[Card]:
        return self.hands[seat][1 : self.round_id + 1]

    def hole(self, seat: int) -> Card:
        return self.hands[seat][0]

    def current_cards(self, seat: int) -> list[Card]:
        return self.hands[seat][: self.round_id + 1]

    # -- betting round state ----------------------------------------------

    def _start_round(self) -> None:
        self.bet_level = 0
        self.raises_this_round = 0
        self.round_contrib = [0, 0]
        self._passes = 0
        self.to_act = self._first_bettor()

    def _first_bettor(self) -> int:
        """Best hand showing opens; ties broken by top upcard rank, then seat 0."""
        t0 = classify_partial(self.upcards(0))
        t1 = classify_partial(self.upcards(1))
        if t0 != t1:
            return 0 if t0 > t1 else 1
        r0 = max(c.rank for c in self.upcards(0))
        r1 = max(c.rank for c in self.upcards(1))
        if r0 != r1:
            return 0 if r0 > r1 else 1
        return 0

    def facing_bet(self, seat: int) -> bool:
        return self.bet_level > self.round_contrib[seat]

    def legal_actions(self) -> set[Action]:
        if self.phase != Phase.BETTING:
            return set()
        if self.facing_bet(self.to_act):
            acts = {Action.FOLD, Action.CALL}
            if self.raises_this_round < MAX_RAISES:
                acts.add(Action.RAISE)
            return acts
        return {Action.PASS, Action.BET}

    def round_actions(self, seat: int) -> list[Action]:
        return [a for s, a, r in self.history if s == seat and r == self.round_id]

    def view(self, seat: int) -> PlayerView:
        return PlayerView(
            seat=seat,
            hole=self.hole(seat),
            upcards=list(self.upcards(seat)),
            opp_upcards=list(self.upcards(1 - seat)),
            round_id=self.round_id,
            pot=self.pot,
            facing_bet=self.facing_bet(seat),
            raises_this_round=self.raises_this_round,
            opp_actions_this_round=self.round_actions(1 - seat),
            history=list(self.history),
        )

    # -- transitions --------------------------------------------------------

    def submit(self, seat: int, action: Action) -> None:
        if self.phase != Phase.BETTING:
            raise IllegalActionError(f"game is not in a betting phase ({self.phase.value})")
        if seat != self.to_act:
            raise IllegalActionError(f"seat {seat} acted out of turn")
        legal = self.legal_actions()
        if action not in legal:
            if action is Action.RAISE and self.raises_this_round >= MAX_RAISES:
                raise IllegalActionError("up to three raises per round")
            raise IllegalActionError(f"{action.value} is not legal now")

        self.history.append((seat, action, self.round_id))
        if action is Action.PASS:
            self._passes += 1
            if self._passes == 2:
                self._end_round()
            else:
                self.to_act = 1 - seat
        elif action is Action.BET:
            self._pay_to_level(seat, self.bet_level + 1)
            self.to_act = 1 - seat
        elif action is Action.RAISE:
            self.raises_this_round += 1
            self._pay_to_level(seat, self.bet_level + 1)
            self.to_act = 1 - seat
        elif action is Action.CALL:
            self._pay_to_level(seat, self.bet_level)
            self._end_round()
        elif action is Action.FOLD:
            self._settle_fold(seat)

    def _pay_to_level(self, seat: int, level: int) -> None:
        owe = level * self.unit - self.round_contrib[seat]
        self.bet_level = level
        self.round_contrib[seat] += owe
        self.contrib[seat] += owe
        self.pot += owe

    def _end_round(self) -> None:
        if self.round_id == 4:
            self._settle_showdown()
        else:
            self.round_id += 1
            self._start_round()

    def _settle_fold(self, seat: int) -> None:
        self.phase = Phase.FOLDED
        self.fold_by = seat
        self.winner = 1 - seat

    def concede(self, seat: int) -> None:
        """Protocol-violation forfeit: treated as a fold regardless of state."""
        if self.phase != Phase.BETTING:
            raise IllegalActionError("nothing to concede")
        self.forfeited = True
        self._settle_fold(seat)

    def _settle_showdown(self) -> None:
        self.phase = Phase.SHOWDOWN
        cmp = compare_hands(self.hands[0], self.hands[1])
        if cmp == 0:
            self.tie = True
        else:
            self.winner = 0 if cmp > 0 else 1
        self.phase = Phase.SETTLED

    @property
    def done(self) -> bool:
        return self.phase in (Phase.SETTLED, Phase.FOLDED)

    def nets(self) -> tuple[int, int]:
        if not self.done:
            raise ValueError("game not finished")
        if self.tie:
            return (self.pot // 2 - self.contrib[0], self.pot // 2 - self.contrib[1])
        w = self.winner
        return tuple(self.pot - self.contrib[s] if s == w else -self.contrib[s] for s in (0, 1))

    def record(self) -> GameRecord:
        nets = self.nets()
        showdown = self.phase == Phase.SETTLED
        round_types = None
        if showdown:
            round_types = tuple(
                tuple(classify(self.hands[s][: r + 1]) for r in range(1, 5)) for s in (0, 1)
            )
        return GameRecord(
            seed=self.seed,
            hands=(tuple(self.hands[0]), tuple(self.hands[1])),
            history=list(self.history),
            winner=self.winner,
            tie=self.tie,
            fold_by=self.fold_by,
            forfeit=self.forfeited,
            nets=nets,
            showdown=showdown,
            round_types=round_types,
        )


def play_game(
    agent_a,
    agent_b,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
    ante: int = 1,
    unit: int = 1,
    max_rejections: int = 3,
) -> GameRecord:
    """Drive one game to completion; agent_a sits in seat 0.

    An agent emitting an illegal action is asked again; three consecutive
    rejections forfeit the hand.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    game = Game(rng, ante=ante, unit=unit, seed=seed)
    agents = (agent_a, agent_b)
    while game.phase == Phase.BETTING:
        seat = game.to_act
        rejections = 0
        while True:
            action = agents[seat].decide(game.view(seat))
            try:
                game.submit(seat, action)
                break
            except IllegalActionError:
                rejections += 1
                if rejections >= max_rejections:
                    game.concede(seat)
                    break
    return game.record()
