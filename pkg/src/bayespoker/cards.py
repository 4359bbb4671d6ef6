"""Cards, decks, five-card hand ranking, and the 17-type hand scale.

Hand types follow the classic nine poker categories with busted and paired
hands subdivided by high rank (low = 9 or below, medium = ten or jack, then
queen / king / ace).  Straights are ace-high only: A-2-3-4-5 is not a
straight here, so there are exactly 36 straight flushes and 9,180 plain
straights among the C(52,5) hands.
"""

from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from functools import total_ordering
from typing import Iterable, Sequence

import numpy as np

RANKS = range(2, 15)  # 11=J, 12=Q, 13=K, 14=A (high only)

RANK_CHARS = "23456789TJQKA"
SUIT_CHARS = "CDHS"
SUIT_GLYPHS = {"C": "♣", "D": "♦", "H": "♥", "S": "♠"}


class Suit(IntEnum):
    CLUBS = 0
    DIAMONDS = 1
    HEARTS = 2
    SPADES = 3


@dataclass(frozen=True, order=True)
class Card:
    rank: int  # 2..14
    suit: Suit

    def __post_init__(self):
        if not 2 <= self.rank <= 14:
            raise ValueError(f"card rank out of range: {self.rank}")

    @property
    def index(self) -> int:
        """Dense 0..51 index, used by the vectorized evaluator."""
        return (self.rank - 2) * 4 + int(self.suit)

    @classmethod
    def from_index(cls, i: int) -> "Card":
        return cls(i // 4 + 2, Suit(i % 4))

    @classmethod
    def parse(cls, s: str) -> "Card":
        """Parse compact form like 'AS', 'TD', '9h'."""
        if len(s) != 2:
            raise ValueError(f"bad card string: {s!r}")
        r, u = s[0].upper(), s[1].upper()
        if r not in RANK_CHARS or u not in SUIT_CHARS:
            raise ValueError(f"bad card string: {s!r}")
        return cls(RANK_CHARS.index(r) + 2, Suit(SUIT_CHARS.index(u)))

    def __str__(self) -> str:
        return RANK_CHARS[self.rank - 2] + SUIT_CHARS[int(self.suit)]

    def glyph(self) -> str:
        return RANK_CHARS[self.rank - 2] + SUIT_GLYPHS[SUIT_CHARS[int(self.suit)]]


FULL_DECK = tuple(Card(r, s) for r in RANKS for s in Suit)


class HandType17(IntEnum):
    """Ordered 17-value hand-type scale (total order = hand strength)."""

    BUSTED_LOW = 0
    BUSTED_MEDIUM = 1
    BUSTED_QUEEN = 2
    BUSTED_KING = 3
    BUSTED_ACE = 4
    PAIR_LOW = 5
    PAIR_MEDIUM = 6
    PAIR_QUEENS = 7
    PAIR_KINGS = 8
    PAIR_ACES = 9
    TWO_PAIR = 10
    TRIPLE = 11
    STRAIGHT = 12
    FLUSH = 13
    FULL_HOUSE = 14
    FOUR_OF_A_KIND = 15
    STRAIGHT_FLUSH = 16


N_TYPES = 17

# Collapse of the 17 types onto the classic nine categories (0=busted .. 8=straight flush).
CATEGORY9_OF_TYPE = (0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 3, 4, 5, 6, 7, 8)

CATEGORY9_NAMES = (
    "Busted",
    "Pair",
    "Two Pair",
    "Triple",
    "Straight",
    "Flush",
    "Full House",
    "Four of a Kind",
    "Straight Flush",
)

# Reference single-deal category probabilities (ace-high straights only),
# the yardstick for Monte Carlo estimation checks.
REFERENCE_CATEGORY_PROBS = {
    "Busted": 0.5015629,
    "Pair": 0.4225703,
    "Two Pair": 0.0475431,
    "Triple": 0.0211037,
    "Straight": 0.0035492,
    "Flush": 0.0019693,
    "Full House": 0.0014405,
    "Four of a Kind": 0.0002476,
    "Straight Flush": 0.0000134,
}


def _rank_band(rank: int) -> int:
    """Subdivision offset within busted/pair: 0 low, 1 medium, 2 queen, 3 king, 4 ace."""
    if rank <= 9:
        return 0
    if rank <= 11:
        return 1
    return rank - 10  # Q->2, K->3, A->4


def _check_cards(cards: Sequence[Card], lo: int, hi: int) -> None:
    n = len(cards)
    if not lo <= n <= hi:
        raise ValueError(f"expected {lo}..{hi} cards, got {n}")
    if len(set(cards)) != n:
        raise ValueError("duplicate cards")


def classify_final(cards: Sequence[Card]) -> HandType17:
    """Classify a complete five-card hand on the 17-type scale."""
    _check_cards(cards, 5, 5)
    ranks = sorted((c.rank for c in cards), reverse=True)
    counts = Counter(ranks)
    mult = sorted(counts.values(), reverse=True)
    flush = len({c.suit for c in cards}) == 1
    straight = mult[0] == 1 and ranks[0] - ranks[-1] == 4

    if straight and flush:
        return HandType17.STRAIGHT_FLUSH
    if mult[0] == 4:
        return HandType17.FOUR_OF_A_KIND
    if mult == [3, 2]:
        return HandType17.FULL_HOUSE
    if flush:
        return HandType17.FLUSH
    if straight:
        return HandType17.STRAIGHT
    if mult[0] == 3:
        return HandType17.TRIPLE
    if mult[:2] == [2, 2]:
        return HandType17.TWO_PAIR
    if mult[0] == 2:
        pair_rank = next(r for r, c in counts.items() if c == 2)
        return HandType17(HandType17.PAIR_LOW + _rank_band(pair_rank))
    return HandType17(HandType17.BUSTED_LOW + _rank_band(ranks[0]))


def classify_partial(cards: Sequence[Card]) -> HandType17:
    """Classify a 1-4 card partial hand as the strongest category it realizes.

    Made multiples count at their refined level; all cards one suit counts as
    a flush draw (labelled FLUSH), distinct ranks spanning at most four counts
    as a straight draw (STRAIGHT), both together as STRAIGHT_FLUSH; anything
    else is the busted subtype of the high card.  Draw labels need at least
    two cards: a lone card is just its busted subtype.
    """
    _check_cards(cards, 1, 4)
    ranks = sorted((c.rank for c in cards), reverse=True)
    counts = Counter(ranks)
    mult = sorted(counts.values(), reverse=True)

    if mult[0] == 4:
        return HandType17.FOUR_OF_A_KIND
    if mult[0] == 3:
        return HandType17.TRIPLE
    if mult[0] == 2:
        if mult[1:2] == [2]:
            return HandType17.TWO_PAIR
        pair_rank = next(r for r, c in counts.items() if c == 2)
        return HandType17(HandType17.PAIR_LOW + _rank_band(pair_rank))

    if len(cards) >= 2:
        flush = len({c.suit for c in cards}) == 1
        straight = ranks[0] - ranks[-1] <= 4
        if flush and straight:
            return HandType17.STRAIGHT_FLUSH
        if flush:
            return HandType17.FLUSH
        if straight:
            return HandType17.STRAIGHT
    return HandType17(HandType17.BUSTED_LOW + _rank_band(ranks[0]))


def classify(cards: Sequence[Card]) -> HandType17:
    """Classify any 1-5 card hand (partial scale below five cards)."""
    if len(cards) == 5:
        return classify_final(cards)
    return classify_partial(cards)


@total_ordering
@dataclass(frozen=True)
class HandValue:
    """Hand strength as (type, tiebreak ranks); compares at the nine-category level."""

    type17: HandType17
    tiebreak: tuple[int, ...]

    @property
    def category9(self) -> int:
        return CATEGORY9_OF_TYPE[self.type17]

    def _key(self):
        return (self.category9, self.tiebreak)

    def __eq__(self, other) -> bool:
        return self._key() == other._key()

    def __lt__(self, other) -> bool:
        return self._key() < other._key()


def _tiebreak(ranks: Sequence[int], counts: Counter) -> tuple[int, ...]:
    # Ranks ordered by (multiplicity, rank) descending: the standard kicker order
    # for every category; duplicated ranks are kept (harmless for comparison).
    return tuple(sorted(ranks, key=lambda r: (counts[r], r), reverse=True))


def hand_value(cards: Sequence[Card]) -> HandValue:
    """Full strength of a five-card hand, kickers included (suits never rank)."""
    _check_cards(cards, 5, 5)
    t = classify_final(cards)
    ranks = [c.rank for c in cards]
    return HandValue(t, _tiebreak(ranks, Counter(ranks)))


def partial_hand_value(cards: Sequence[Card]) -> HandValue:
    """Strength of a 1-4 card partial hand; used for rule-based comparisons."""
    _check_cards(cards, 1, 4)
    t = classify_partial(cards)
    ranks = [c.rank for c in cards]
    return HandValue(t, _tiebreak(ranks, Counter(ranks)))


def compare_hands(a: Sequence[Card], b: Sequence[Card]) -> int:
    """Full poker ordering of two five-card hands: +1 first wins, -1 second, 0 tie."""
    va, vb = hand_value(a), hand_value(b)
    if va > vb:
        return 1
    if va < vb:
        return -1
    return 0


class Deck:
    """A shuffled deck owned by one game; deals from the top."""

    def __init__(self, rng: np.random.Generator):
        order = rng.permutation(52)
        self._cards = [FULL_DECK[i] for i in order]
        self._next = 0

    @property
    def remaining(self) -> int:
        return 52 - self._next

    def deal(self, n: int) -> list[Card]:
        if n < 0:
            raise ValueError("cannot deal a negative number of cards")
        if n > self.remaining:
            raise ValueError(f"deck exhausted: asked {n}, have {self.remaining}")
        out = self._cards[self._next : self._next + n]
        self._next += n
        return out


def cards_from_strs(specs: Iterable[str]) -> list[Card]:
    return [Card.parse(s) for s in specs]
