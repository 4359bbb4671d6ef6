import itertools

import numpy as np
import pytest

from bayespoker.cards import CATEGORY9_OF_TYPE, FULL_DECK, HandType17, classify_partial
from bayespoker.fasteval import classify_final_batch, score_final_batch
from bayespoker.inference import ActionClass
from bayespoker.matrices import (
    ActionCountsStore,
    MatrixFormatError,
    action_matrix,
    estimate_deal_matrices,
    estimate_win_matrix,
    fresh_action_counts,
    load_matrices,
    save_matrices,
    update_action_counts,
)

T = HandType17


class TestDealMatrices:
    def test_round4_current_given_final_is_identity(self, mset_small):
        assert np.array_equal(mset_small.c_given_f[3], np.eye(17))

    def test_rows_normalized(self, mset_small):
        for stack in (mset_small.c_given_f, mset_small.u_given_c):
            sums = stack.sum(axis=-1)
            assert np.abs(sums - 1.0).max() < 1e-9
        assert abs(mset_small.final_prior.sum() - 1.0) < 1e-9
        assert (mset_small.c_given_f >= 0).all() and (mset_small.u_given_c >= 0).all()

    def test_reproducible(self):
        a = estimate_deal_matrices(20_000, seed=5)
        b = estimate_deal_matrices(20_000, seed=5)
        assert np.array_equal(a.final_prior, b.final_prior)
        assert np.array_equal(a.c_given_f, b.c_given_f)
        assert np.array_equal(a.u_given_c, b.u_given_c)

    def test_law_of_total_probability(self, mset_small):
        # prior . M_C|F[r] must reproduce the observed round-r current marginal.
        predicted = np.einsum("f,rfc->rc", mset_small.final_prior, mset_small.c_given_f)
        assert np.abs(predicted - mset_small.current_marginals).max() < 0.002

    def test_round1_straight_flush_row_concentrates_on_reachable(self, mset_1m):
        # Exhaustive oracle: every 2-card subset of every straight flush is a
        # suited span<=4 pair, i.e. itself a straight-flush draw.
        for high in range(6, 15):
            ranks = range(high - 4, high + 1)
            for suit in range(4):
                cards = [c for c in FULL_DECK if c.rank in ranks and int(c.suit) == suit]
                assert len(cards) == 5
                for pair in itertools.combinations(cards, 2):
                    assert classify_partial(list(pair)) == T.STRAIGHT_FLUSH
        row = mset_1m.c_given_f[0][T.STRAIGHT_FLUSH]
        assert row.argmax() == T.STRAIGHT_FLUSH

    def test_num_deals_validated(self):
        with pytest.raises(ValueError):
            estimate_deal_matrices(0, seed=1)


class TestWinMatrix:
    def test_off_diagonal_forced_by_type_order(self, mset_small):
        win = mset_small.win
        i, j = np.indices(win.shape)
        assert (win[i > j] == 1.0).all()
        assert (win[i < j] == 0.0).all()

    def test_diagonal_half_tie_symmetry(self, mset_small):
        # Both-perspective tabulation makes W[i][i] = 1 - W[i][i] exact.
        diag = np.diagonal(mset_small.win)
        assert np.array_equal(diag, 1.0 - diag)
        assert (np.abs(diag - 0.5) <= 0.5).all()

    def test_forced_cells_examples(self, mset_small):
        win = mset_small.win
        assert win[T.STRAIGHT_FLUSH][T.BUSTED_LOW] == 1.0
        assert win[T.PAIR_ACES][T.PAIR_KINGS] == 1.0

    def test_flush_vs_flush_matches_enumeration_oracle(self, mset_small, rng):
        # Independent oracle: sample disjoint flush-vs-flush pairs directly and
        # score them; compare the half-tie-credited win rate with W.
        suits = rng.integers(0, 4, size=(30_000, 2))
        keep = suits[:, 0] != suits[:, 1]  # disjoint by construction when suits differ
        suits = suits[keep][:15_000]
        hands = np.empty((len(suits), 10), dtype=np.int8)
        for i, (sa, sb) in enumerate(suits):
            ra = rng.choice(13, size=5, replace=False)
            rb = rng.choice(13, size=5, replace=False)
            hands[i, :5] = ra * 4 + sa
            hands[i, 5:] = rb * 4 + sb
        ta = classify_final_batch(hands[:, :5])
        tb = classify_final_batch(hands[:, 5:])
        mask = (ta == T.FLUSH) & (tb == T.FLUSH)
        sa_ = score_final_batch(hands[mask][:, :5])
        sb_ = score_final_batch(hands[mask][:, 5:])
        oracle = float(np.mean((sa_ > sb_) + 0.5 * (sa_ == sb_)))
        w = mset_small.win[T.FLUSH][T.FLUSH]
        assert 0.0 < w < 1.0
        assert abs(w - oracle) < 0.02

    def test_reproducible(self):
        a = estimate_win_matrix(20_000, seed=3)
        b = estimate_win_matrix(20_000, seed=3)
        assert np.array_equal(a, b)


class TestActionCounts:
    def test_fresh_counts_are_uniform(self):
        m = action_matrix(fresh_action_counts())
        assert np.array_equal(m, np.full((4, 17, 2), 0.5))

    def test_single_update_example(self):
        counts = fresh_action_counts()
        update_action_counts(counts, 2, T.PAIR_ACES, ActionClass.AGGRESSIVE)
        m = action_matrix(counts)
        assert m[1, T.PAIR_ACES, ActionClass.AGGRESSIVE] == pytest.approx(2 / 3)
        assert m[1, T.PAIR_ACES, ActionClass.CONSERVATIVE] == pytest.approx(1 / 3)

    def test_scripted_threshold_convergence(self, rng):
        # The script is its own oracle: aggressive iff type >= PAIR_LOW.
        counts = fresh_action_counts()
        for _ in range(10_000):
            r = int(rng.integers(1, 5))
            t = T(int(rng.integers(0, 17)))
            cls = ActionClass.AGGRESSIVE if t >= T.PAIR_LOW else ActionClass.CONSERVATIVE
            update_action_counts(counts, r, t, cls)
        m = action_matrix(counts)
        for r in range(4):
            for t in range(17):
                target = 1.0 if t >= T.PAIR_LOW else 0.0
                assert abs(m[r, t, ActionClass.AGGRESSIVE] - target) < 0.03

    def test_store_pooled_fallback(self):
        store = ActionCountsStore()
        store.update("alice", 1, T.PAIR_ACES, ActionClass.AGGRESSIVE)
        # a known opponent uses its own counts
        assert store.action_matrix_for("alice")[0, T.PAIR_ACES, 1] == pytest.approx(2 / 3)
        # an unknown opponent falls back to the pooled record
        assert store.action_matrix_for("bob")[0, T.PAIR_ACES, 1] == pytest.approx(2 / 3)
        # anonymous updates land in the pool only
        store.update(None, 1, T.PAIR_ACES, ActionClass.AGGRESSIVE)
        assert store.action_matrix_for(None)[0, T.PAIR_ACES, 1] == pytest.approx(3 / 4)
        assert store.action_matrix_for("alice")[0, T.PAIR_ACES, 1] == pytest.approx(2 / 3)


class TestPersistence:
    def test_roundtrip_bitwise(self, mset_small, tmp_path):
        store = ActionCountsStore()
        store.update("opp", 2, T.TRIPLE, ActionClass.AGGRESSIVE)
        path = tmp_path / "m.json"
        save_matrices(path, mset_small, store)
        loaded, loaded_store = load_matrices(path)
        assert np.array_equal(loaded.final_prior, mset_small.final_prior)
        assert np.array_equal(loaded.c_given_f, mset_small.c_given_f)
        assert np.array_equal(loaded.u_given_c, mset_small.u_given_c)
        assert np.array_equal(loaded.win, mset_small.win)
        assert loaded.seed == mset_small.seed
        assert loaded.num_deals == mset_small.num_deals
        for key in store.counts:
            assert np.array_equal(loaded_store.counts[key], store.counts[key])

    def test_bad_row_sum_rejected(self, mset_small, tmp_path):
        import json

        path = tmp_path / "m.json"
        save_matrices(path, mset_small)
        doc = json.loads(path.read_text())
        doc["final_prior"][0] -= 0.2
        path.write_text(json.dumps(doc))
        with pytest.raises(MatrixFormatError, match="sums to"):
            load_matrices(path)

    def test_truncated_file_names_byte_offset(self, mset_small, tmp_path):
        path = tmp_path / "m.json"
        save_matrices(path, mset_small)
        data = path.read_bytes()[: len(path.read_bytes()) // 2]
        path.write_bytes(data)
        with pytest.raises(MatrixFormatError, match=r"byte \d+"):
            load_matrices(path)

    def test_version_mismatch(self, mset_small, tmp_path):
        import json

        path = tmp_path / "m.json"
        save_matrices(path, mset_small)
        doc = json.loads(path.read_text())
        doc["format_version"] = 99
        path.write_text(json.dumps(doc))
        with pytest.raises(MatrixFormatError, match="version"):
            load_matrices(path)


def test_small_prior_close_to_reference_categories(mset_small):
    from bayespoker.cards import REFERENCE_CATEGORY_PROBS, CATEGORY9_NAMES

    cat9 = np.zeros(9)
    for t in range(17):
        cat9[CATEGORY9_OF_TYPE[t]] += mset_small.final_prior[t]
    for i, name in enumerate(CATEGORY9_NAMES):
        # 200k deals: binomial noise well inside 0.005 for every category
        assert abs(cat9[i] - REFERENCE_CATEGORY_PROBS[name]) < 0.005
