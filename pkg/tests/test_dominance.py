import pytest

from blotto_rde.dominance import (
    EliminationStep,
    Mode,
    OrderPolicy,
    Player,
    dominates,
    eliminate_iterated,
    replay_trace,
)
from blotto_rde.errors import InvalidInput
from blotto_rde.matrix_game import MatrixGame, blotto_game
from blotto_rde.solver import solve_maximin

from conftest import MATRIX_4V4


class TestDominates:
    def test_8v9_column(self, game_8v9):
        assert dominates(game_8v9, Player.COLUMN, game_8v9.col_index("8-1"), game_8v9.col_index("9-0"))

    def test_4v4_rows_incomparable(self, game_4v4):
        assert not dominates(game_4v4, Player.ROW, 0, 1, Mode.STRICT)
        assert not dominates(game_4v4, Player.ROW, 0, 1, Mode.WEAK)

    def test_self(self, game_4v4):
        with pytest.raises(InvalidInput):
            dominates(game_4v4, Player.ROW, 1, 1)

    def test_out_of_range(self, game_4v4):
        with pytest.raises(InvalidInput):
            dominates(game_4v4, Player.COLUMN, 0, 3)

    def test_strict_implies_weak(self):
        for g in range(1, 9):
            for p in range(1, 9):
                game = blotto_game(g, p)
                for player, n in ((Player.ROW, game.n_rows), (Player.COLUMN, game.n_cols)):
                    for i in range(n):
                        for j in range(n):
                            if i != j and dominates(game, player, i, j, Mode.STRICT):
                                assert dominates(game, player, i, j, Mode.WEAK)


class TestEliminate:
    def test_8v9_to_4v4(self, game_8v9):
        r = eliminate_iterated(game_8v9)
        assert r.game.row_labels == ("8-0", "6-2", "4-4")
        assert r.game.col_labels == ("8-1", "6-3", "5-4")
        assert [list(row) for row in r.game.payoffs] == MATRIX_4V4
        assert [(s.player, s.eliminated_label, s.dominator_label) for s in r.trace] == [
            (Player.COLUMN, "9-0", "8-1"),
            (Player.ROW, "7-1", "8-0"),
            (Player.COLUMN, "7-2", "6-3"),
            (Player.ROW, "5-3", "6-2"),
        ]
        assert r.row_index_map == (0, 2, 4)
        assert r.col_index_map == (1, 3, 4)

    def test_4v4_unchanged(self, game_4v4):
        r = eliminate_iterated(game_4v4)
        assert r.trace == () and r.game == game_4v4

    def test_one_by_one(self):
        game = MatrixGame.from_matrix([[3]])
        assert eliminate_iterated(game).trace == ()

    def test_4v4_has_no_weak_pair(self, game_4v4):
        # brute force over ordered pairs
        for player in Player:
            for i in range(3):
                for j in range(3):
                    if i != j:
                        assert not dominates(game_4v4, player, i, j, Mode.WEAK)

    def test_strict_leaves_8v9(self, game_8v9):
        assert eliminate_iterated(game_8v9, Mode.STRICT).trace == ()

    @pytest.mark.parametrize("policy", list(OrderPolicy))
    def test_replay_deterministic(self, game_8v9, policy):
        a = eliminate_iterated(game_8v9, Mode.WEAK, policy)
        b = eliminate_iterated(game_8v9, Mode.WEAK, policy)
        assert a == b
        assert replay_trace(game_8v9, a.trace) == a.game

    def test_replay_rejects_bogus_step(self, game_4v4):
        bogus = (EliminationStep(Player.ROW, "4-0", "3-1", Mode.WEAK),)
        with pytest.raises(InvalidInput):
            replay_trace(game_4v4, bogus)

    def test_strict_preserves_value(self):
        for g in range(1, 11):
            for p in range(1, 11):
                game = blotto_game(g, p)
                reduced = eliminate_iterated(game, Mode.STRICT).game
                assert solve_maximin(reduced).value == solve_maximin(game).value

    def test_residual_has_no_dominance(self):
        for g in range(1, 11):
            for p in range(1, 11):
                rg = eliminate_iterated(blotto_game(g, p)).game
                for player, n in ((Player.ROW, rg.n_rows), (Player.COLUMN, rg.n_cols)):
                    assert not any(dominates(rg, player, i, j)
                                   for i in range(n) for j in range(n) if i != j)

    def test_step_dict(self, game_8v9):
        step = eliminate_iterated(game_8v9).trace[0]
        assert step.to_dict() == {"player": "column", "eliminated": "9-0", "dominator": "8-1", "mode": "weak"}
