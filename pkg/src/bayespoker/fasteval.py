"""Vectorized hand classification and scoring over card-index arrays.

Cards are dense ints 0..51 (index = (rank-2)*4 + suit), matching
``Card.index``.  These routines exist for the Monte Carlo paths (matrix
estimation, win-matrix tabulation, equity sampling) where per-hand Python
objects would be far too slow; they must agree exactly with the scalar
classifiers in ``cards`` (tested property-style).
"""

import numpy as np

from .cards import HandType17

# Busted/pair subdivision band per rank (index 2..14): <=9 low, T/J medium, Q, K, A.
_BAND = np.array([0] * 10 + [1, 1, 2, 3, 4], dtype=np.int8)

_T = HandType17  # brevity in the np.select tables


def _ranks_suits(cards: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (cards // 4 + 2).astype(np.int8), (cards % 4).astype(np.int8)


def _rank_count_matrix(ranks: np.ndarray) -> np.ndarray:
    """(N,k) ranks -> (N,15) per-row rank multiplicities."""
    n = ranks.shape[0]
    flat = (np.arange(n, dtype=np.int64)[:, None] * 15 + ranks).ravel()
    return np.bincount(flat, minlength=n * 15).reshape(n, 15).astype(np.int8)


def classify_final_batch(cards: np.ndarray) -> np.ndarray:
    """17-type of each row of a (N,5) card-index array."""
    ranks, suits = _ranks_suits(cards)
    counts = _rank_count_matrix(ranks)
    maxc = counts.max(axis=1)
    npair = (counts == 2).sum(axis=1)
    high = ranks.max(axis=1)
    flush = (suits == suits[:, :1]).all(axis=1)
    straight = (maxc == 1) & (high - ranks.min(axis=1) == 4)
    pair_rank = (counts == 2).argmax(axis=1)

    return np.select(
        [
            straight & flush,
            maxc == 4,
            (maxc == 3) & (npair == 1),
            flush,
            straight,
            maxc == 3,
            npair == 2,
            npair == 1,
        ],
        [
            np.int8(_T.STRAIGHT_FLUSH),
            np.int8(_T.FOUR_OF_A_KIND),
            np.int8(_T.FULL_HOUSE),
            np.int8(_T.FLUSH),
            np.int8(_T.STRAIGHT),
            np.int8(_T.TRIPLE),
            np.int8(_T.TWO_PAIR),
            (_T.PAIR_LOW + _BAND[pair_rank]).astype(np.int8),
        ],
        default=(_T.BUSTED_LOW + _BAND[high]).astype(np.int8),
    )


def classify_partial_batch(cards: np.ndarray) -> np.ndarray:
    """17-type of each row of a (N,k) card-index array, k in 1..4."""
    k = cards.shape[1]
    ranks, suits = _ranks_suits(cards)
    if k == 1:
        return (_T.BUSTED_LOW + _BAND[ranks[:, 0]]).astype(np.int8)
    counts = _rank_count_matrix(ranks)
    maxc = counts.max(axis=1)
    npair = (counts == 2).sum(axis=1)
    high = ranks.max(axis=1)
    distinct = maxc == 1
    flush = (suits == suits[:, :1]).all(axis=1)
    run = high - ranks.min(axis=1) <= 4
    pair_rank = (counts == 2).argmax(axis=1)

    return np.select(
        [
            maxc == 4,
            maxc == 3,
            npair == 2,
            distinct & flush & run,
            distinct & flush,
            distinct & run,
            npair == 1,
        ],
        [
            np.int8(_T.FOUR_OF_A_KIND),
            np.int8(_T.TRIPLE),
            np.int8(_T.TWO_PAIR),
            np.int8(_T.STRAIGHT_FLUSH),
            np.int8(_T.FLUSH),
            np.int8(_T.STRAIGHT),
            (_T.PAIR_LOW + _BAND[pair_rank]).astype(np.int8),
        ],
        default=(_T.BUSTED_LOW + _BAND[high]).astype(np.int8),
    )


def classify_batch(cards: np.ndarray) -> np.ndarray:
    if cards.shape[1] == 5:
        return classify_final_batch(cards)
    return classify_partial_batch(cards)


def score_final_batch(cards: np.ndarray) -> np.ndarray:
    """Total-order score of (N,5) hands: equal score iff the hands tie.

    Layout: nine-way category in the top digit, then the five ranks sorted by
    (multiplicity, rank) descending, packed base-16.  That rank order is the
    kicker order for every category, so scores compare exactly like full hand
    values.
    """
    ranks, suits = _ranks_suits(cards)
    counts = _rank_count_matrix(ranks)
    maxc = counts.max(axis=1)
    npair = (counts == 2).sum(axis=1)
    flush = (suits == suits[:, :1]).all(axis=1)
    straight = (maxc == 1) & (ranks.max(axis=1) - ranks.min(axis=1) == 4)

    cat = np.select(
        [
            straight & flush,
            maxc == 4,
            (maxc == 3) & (npair == 1),
            flush,
            straight,
            maxc == 3,
            npair == 2,
            npair == 1,
        ],
        [8, 7, 6, 5, 4, 3, 2, 1],
        default=0,
    ).astype(np.int64)

    per_card_count = np.take_along_axis(counts, ranks.astype(np.intp), axis=1)
    keys = per_card_count.astype(np.int16) * 16 + ranks
    keys = np.sort(keys, axis=1)[:, ::-1]
    tiebreak_ranks = (keys & 15).astype(np.int64)

    score = cat
    for i in range(5):
        score = score * 16 + tiebreak_ranks[:, i]
    return score


def deal_blocks(rng: np.random.Generator, n_deals: int, n_cards: int, chunk: int = 200_000):
    """Yield (m, n_cards) int8 blocks of distinct cards, m summing to n_deals."""
    base = np.arange(52, dtype=np.int8)
    remaining = n_deals
    while remaining > 0:
        m = min(chunk, remaining)
        block = rng.permuted(np.tile(base, (m, 1)), axis=1)
        yield np.ascontiguousarray(block[:, :n_cards])
        remaining -= m


def sample_from_pool(rng: np.random.Generator, pool: np.ndarray, rows: int, n_take: int) -> np.ndarray:
    """(rows, n_take) distinct draws per row from the given card pool."""
    block = rng.permuted(np.tile(pool, (rows, 1)), axis=1)
    return np.ascontiguousarray(block[:, :n_take])
