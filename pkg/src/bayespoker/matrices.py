"""Estimation, persistence, and learning of the conditional probability matrices.

A deal here is an ordered five-card hand: card 1 is the hole card, cards 2-5
are up.  Round r (1..4) sees the first r+1 cards; its upcards are cards
2..r+1.  Frequencies over many such deals give, per round, the distribution
of current hand type given final type and of upcard type given current type,
plus the prior over final types.

The win matrix holds P(first player wins | both final types); off-diagonal
entries are forced by the type order, diagonal entries carry the half-a-tie
credit and come out exactly 0.5 because every sampled pair is tabulated from
both seats' perspectives.

Opponent action behaviour is learned as per-round 17x2 counts of
conservative vs aggressive play, seeded with one pseudo-count per cell so an
unobserved opponent looks 50/50.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .cards import N_TYPES, HandType17
from .fasteval import classify_final_batch, classify_partial_batch, deal_blocks, score_final_batch

FORMAT_VERSION = 1
POOLED_OPPONENT = "__pooled__"
ROW_SUM_TOL = 1e-9

N_ROUNDS = 4
N_ACTION_CLASSES = 2  # conservative, aggressive


class MatrixFormatError(ValueError):
    """Raised when a matrix file cannot be parsed or fails validation."""


@dataclass
class MatrixSet:
    """All dealt-card matrices: final-type prior, per-round CPTs, win matrix."""

    final_prior: np.ndarray  # (17,)
    c_given_f: np.ndarray  # (4,17,17): [r-1][final][current]
    u_given_c: np.ndarray  # (4,17,17): [r-1][current][upcards]
    win: np.ndarray  # (17,17): P(first wins | first i, second j)
    seed: int
    num_deals: int
    # Observed round-r current-type marginals, a simulation diagnostic kept out
    # of the persisted file.
    current_marginals: np.ndarray | None = None


def estimate_deal_matrices(num_deals: int, seed: int, chunk: int = 200_000) -> MatrixSet:
    """Monte Carlo estimate of the prior and the per-round deal CPTs.

    Current-given-final and upcards-given-current rows get +1 additive
    smoothing before normalization so no evidence combination has zero
    likelihood; the round-4 current-given-final block is the exact identity
    (at five cards, current and final coincide by definition).  The returned
    win matrix slot is zeros; see estimate_win_matrix.
    """
    if num_deals < 1:
        raise ValueError("num_deals must be >= 1")
    rng = np.random.default_rng(seed)
    cf_counts = np.zeros((N_ROUNDS, N_TYPES, N_TYPES), dtype=np.int64)
    uc_counts = np.zeros((N_ROUNDS, N_TYPES, N_TYPES), dtype=np.int64)
    final_counts = np.zeros(N_TYPES, dtype=np.int64)
    cur_counts = np.zeros((N_ROUNDS, N_TYPES), dtype=np.int64)

    for block in deal_blocks(rng, num_deals, 5, chunk):
        final_t = classify_final_batch(block).astype(np.int64)
        final_counts += np.bincount(final_t, minlength=N_TYPES)
        for r in range(1, N_ROUNDS + 1):
            if r == N_ROUNDS:
                cur_t = final_t
            else:
                cur_t = classify_partial_batch(block[:, : r + 1]).astype(np.int64)
            up_t = classify_partial_batch(block[:, 1 : r + 1]).astype(np.int64)
            cf_counts[r - 1] += np.bincount(
                final_t * N_TYPES + cur_t, minlength=N_TYPES * N_TYPES
            ).reshape(N_TYPES, N_TYPES)
            uc_counts[r - 1] += np.bincount(
                cur_t * N_TYPES + up_t, minlength=N_TYPES * N_TYPES
            ).reshape(N_TYPES, N_TYPES)
            cur_counts[r - 1] += np.bincount(cur_t, minlength=N_TYPES)

    c_given_f = _smooth_rows(cf_counts)
    c_given_f[N_ROUNDS - 1] = np.eye(N_TYPES)
    u_given_c = _smooth_rows(uc_counts)
    return MatrixSet(
        final_prior=final_counts / num_deals,
        c_given_f=c_given_f,
        u_given_c=u_given_c,
        win=np.zeros((N_TYPES, N_TYPES)),
        seed=seed,
        num_deals=num_deals,
        current_marginals=cur_counts / num_deals,
    )


def _smooth_rows(counts: np.ndarray) -> np.ndarray:
    smoothed = counts + 1.0
    return smoothed / smoothed.sum(axis=-1, keepdims=True)


def estimate_win_matrix(num_deals: int, seed: int, chunk: int = 200_000) -> np.ndarray:
    """Tabulate P(win | both final types) from disjoint two-hand deals.

    Each deal contributes from both seats' perspectives, so the same-type
    diagonal is exactly 0.5 (ties credited half each way).  Cells for unequal
    types are overwritten with the 0/1 forced by the type order, which also
    covers type pairs too rare to sample.
    """
    if num_deals < 1:
        raise ValueError("num_deals must be >= 1")
    rng = np.random.default_rng(seed)
    credit = np.zeros(N_TYPES * N_TYPES)
    seen = np.zeros(N_TYPES * N_TYPES)
    for block in deal_blocks(rng, num_deals, 10, chunk):
        a, b = block[:, :5], block[:, 5:]
        ta = classify_final_batch(a).astype(np.int64)
        tb = classify_final_batch(b).astype(np.int64)
        sa = score_final_batch(a)
        sb = score_final_batch(b)
        res_a = np.where(sa > sb, 1.0, np.where(sa == sb, 0.5, 0.0))
        ij = ta * N_TYPES + tb
        ji = tb * N_TYPES + ta
        credit += np.bincount(ij, weights=res_a, minlength=N_TYPES * N_TYPES)
        credit += np.bincount(ji, weights=1.0 - res_a, minlength=N_TYPES * N_TYPES)
        seen += np.bincount(ij, minlength=N_TYPES * N_TYPES)
        seen += np.bincount(ji, minlength=N_TYPES * N_TYPES)

    with np.errstate(invalid="ignore"):
        win = np.where(seen > 0, credit / np.maximum(seen, 1), 0.5)
    win = win.reshape(N_TYPES, N_TYPES)
    i, j = np.indices(win.shape)
    win[i > j] = 1.0
    win[i < j] = 0.0
    return win


def estimate_all(num_deals: int, seed: int, chunk: int = 200_000) -> MatrixSet:
    """Run both estimators on independent substreams of one seed."""
    deal_seed, win_seed = np.random.SeedSequence(seed).spawn(2)
    mset = estimate_deal_matrices(num_deals, _seed_int(deal_seed), chunk)
    mset.win = estimate_win_matrix(num_deals, _seed_int(win_seed), chunk)
    mset.seed = seed
    return mset


def _seed_int(ss: np.random.SeedSequence) -> int:
    return int(ss.generate_state(1, dtype=np.uint64)[0])


# --- opponent action counts ---------------------------------------------------


def fresh_action_counts() -> np.ndarray:
    """(4,17,2) counts at the pseudo-count floor: every row reads 50/50."""
    return np.ones((N_ROUNDS, N_TYPES, N_ACTION_CLASSES), dtype=np.int64)


def update_action_counts(
    counts: np.ndarray, round_id: int, opp_type: HandType17, action_class: int
) -> np.ndarray:
    """Record one observed showdown behaviour; mutates and returns counts."""
    counts[round_id - 1, int(opp_type), int(action_class)] += 1
    return counts


def action_matrix(counts: np.ndarray) -> np.ndarray:
    """Row-normalized (4,17,2) behaviour matrix from counts."""
    return counts / counts.sum(axis=-1, keepdims=True)


@dataclass
class ActionCountsStore:
    """Per-opponent action counts plus a pooled pseudo-opponent for cold starts."""

    counts: dict[str, np.ndarray] = field(default_factory=dict)

    def update(self, opponent_id: str | None, round_id: int, opp_type: HandType17, action_class: int) -> None:
        keys = [POOLED_OPPONENT] if opponent_id is None else [opponent_id, POOLED_OPPONENT]
        for key in keys:
            arr = self.counts.setdefault(key, fresh_action_counts())
            update_action_counts(arr, round_id, opp_type, action_class)

    def counts_for(self, opponent_id: str | None) -> np.ndarray:
        """Counts for a known opponent, else the pooled record, else the floor."""
        if opponent_id is not None and opponent_id in self.counts:
            return self.counts[opponent_id]
        if POOLED_OPPONENT in self.counts:
            return self.counts[POOLED_OPPONENT]
        return fresh_action_counts()

    def action_matrix_for(self, opponent_id: str | None) -> np.ndarray:
        return action_matrix(self.counts_for(opponent_id))


# --- persistence ---------------------------------------------------------------


def save_matrices(path, mset: MatrixSet, store: ActionCountsStore | None = None) -> None:
    """Write the full matrix set (and learned counts) as one JSON document."""
    store = store or ActionCountsStore()
    doc = {
        "format_version": FORMAT_VERSION,
        "hand_type_order": [t.name for t in HandType17],
        "seed": mset.seed,
        "num_deals": mset.num_deals,
        "final_prior": mset.final_prior.tolist(),
        "c_given_f": [m.ravel().tolist() for m in mset.c_given_f],
        "u_given_c": [m.ravel().tolist() for m in mset.u_given_c],
        "win_matrix": mset.win.ravel().tolist(),
        "action_counts": {
            key: [m.ravel().tolist() for m in arr] for key, arr in store.counts.items()
        },
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_matrices(path) -> tuple[MatrixSet, ActionCountsStore]:
    """Load and validate a matrix file produced by save_matrices."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise MatrixFormatError(f"malformed matrix file at byte {e.pos}: {e.msg}") from e

    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise MatrixFormatError(f"unsupported matrix file version: {version!r}")

    try:
        final_prior = np.asarray(doc["final_prior"], dtype=np.float64)
        c_given_f = np.asarray(doc["c_given_f"], dtype=np.float64).reshape(N_ROUNDS, N_TYPES, N_TYPES)
        u_given_c = np.asarray(doc["u_given_c"], dtype=np.float64).reshape(N_ROUNDS, N_TYPES, N_TYPES)
        win = np.asarray(doc["win_matrix"], dtype=np.float64).reshape(N_TYPES, N_TYPES)
        counts = {
            key: np.asarray(arr, dtype=np.int64).reshape(N_ROUNDS, N_TYPES, N_ACTION_CLASSES)
            for key, arr in doc.get("action_counts", {}).items()
        }
    except (KeyError, ValueError) as e:
        raise MatrixFormatError(f"bad matrix file structure: {e}") from e

    if final_prior.shape != (N_TYPES,):
        raise MatrixFormatError("final_prior must have 17 entries")
    _check_rows("final_prior", final_prior[None, :])
    for name, stack in (("c_given_f", c_given_f), ("u_given_c", u_given_c)):
        _check_rows(name, stack.reshape(-1, N_TYPES))
    if np.any(win < 0) or np.any(win > 1):
        raise MatrixFormatError("win_matrix entries must lie in [0,1]")
    for key, arr in counts.items():
        if np.any(arr < 1):
            raise MatrixFormatError(f"action counts for {key!r} fall below the pseudo-count floor")

    mset = MatrixSet(
        final_prior=final_prior,
        c_given_f=c_given_f,
        u_given_c=u_given_c,
        win=win,
        seed=doc.get("seed"),
        num_deals=doc.get("num_deals"),
    )
    return mset, ActionCountsStore(counts=counts)


def _check_rows(name: str, rows: np.ndarray) -> None:
    sums = rows.sum(axis=-1)
    bad = np.abs(sums - 1.0) > ROW_SUM_TOL
    if np.any(bad):
        idx = int(np.argmax(bad))
        raise MatrixFormatError(f"{name} row {idx} sums to {sums[idx]!r}, expected 1")
    if np.any(rows < 0):
        raise MatrixFormatError(f"{name} has negative entries")
