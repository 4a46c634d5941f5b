import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from blotto_rde.errors import FormatError, InvalidInput, Unsupported
from blotto_rde.matrix_game import (
    BlottoSpec,
    MatrixGame,
    MixedStrategy,
    Split,
    blotto_game,
    blotto_payoff,
    build_blotto,
    format_rational,
    load_game,
    loads_game,
    save_game,
    splits,
    strategy_from_dict,
    strategy_to_dict,
)

from conftest import H, MATRIX_4V4, MATRIX_8V9


def _simulated_payoff(g_split, p_split):
    """Independent route: place the attacker's parties on the two arsenals
    in both orders against a fixed defender layout and average captures."""
    defence = (p_split.larger, p_split.smaller)
    wins = 0
    for attack in ((g_split.larger, g_split.smaller), (g_split.smaller, g_split.larger)):
        captured = [a > d for a, d in zip(attack, defence)]
        wins += 1 if (captured[0] or captured[1]) else 0
    return Fraction(wins, 2)


class TestSplits:
    def test_four(self):
        assert [tuple(s) for s in splits(4)] == [(4, 0), (3, 1), (2, 2)]

    def test_one(self):
        assert [tuple(s) for s in splits(1)] == [(1, 0)]

    def test_nine(self):
        assert [s.label for s in splits(9)] == ["9-0", "8-1", "7-2", "6-3", "5-4"]

    def test_zero_rejected(self):
        with pytest.raises(InvalidInput):
            splits(0)

    @given(st.integers(1, 60))
    def test_count_and_order(self, u):
        ss = splits(u)
        assert len(ss) == u // 2 + 1
        assert all(s.units == u and s.larger >= s.smaller for s in ss)
        assert [s.larger for s in ss] == sorted((s.larger for s in ss), reverse=True)

    def test_malformed_split(self):
        with pytest.raises(InvalidInput):
            Split(1, 3)


class TestPayoff:
    @pytest.mark.parametrize("g,p,expected", [
        ((4, 0), (3, 1), 1),
        ((3, 1), (3, 1), H),
        ((2, 2), (2, 2), 0),
        ((4, 0), (4, 0), H),
        ((3, 1), (4, 0), 1),
    ])
    def test_cases(self, g, p, expected):
        assert blotto_payoff(Split(*g), Split(*p)) == expected

    def test_matches_simulation(self):
        for g in range(1, 13):
            for p in range(1, 13):
                for a in splits(g):
                    for b in splits(p):
                        assert blotto_payoff(a, b) == _simulated_payoff(a, b)

    def test_values_in_half_steps(self):
        allowed = {Fraction(0), H, Fraction(1)}
        for g in range(1, 13):
            for p in range(1, 13):
                assert {x for row in blotto_game(g, p).payoffs for x in row} <= allowed

    def test_defender_holds_at_double_strength(self):
        # p >= 2g: the defender can cover both arsenals with g each
        for g in range(1, 7):
            game = blotto_game(g, 2 * g)
            j = game.col_index(f"{g}-{g}")
            assert all(row[j] == 0 for row in game.payoffs)


class TestBuild:
    def test_4v4(self, game_4v4):
        assert [list(r) for r in game_4v4.payoffs] == MATRIX_4V4
        assert game_4v4.row_labels == ("4-0", "3-1", "2-2")
        assert game_4v4.origin == BlottoSpec(4, 4)

    def test_8v9(self, game_8v9):
        assert [list(r) for r in game_8v9.payoffs] == MATRIX_8V9
        assert game_8v9.col_labels == ("9-0", "8-1", "7-2", "6-3", "5-4")
        assert game_8v9.row_labels == ("8-0", "7-1", "6-2", "5-3", "4-4")

    def test_one_vs_two(self):
        assert [list(r) for r in blotto_game(1, 2).payoffs] == [[H, 0]]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_symmetric_when_equal(self, n):
        m = blotto_game(n, n).payoffs
        assert all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))

    def test_heavy_first_row(self):
        for p in range(1, 11):
            for g in range(p, 13):
                assert all(x >= H for x in blotto_game(g, p).payoffs[0])

    def test_unsupported_battlefields(self):
        with pytest.raises(Unsupported):
            build_blotto(BlottoSpec(4, 4, battlefields=3))

    def test_nonpositive_units(self):
        with pytest.raises(InvalidInput):
            BlottoSpec(0, 4)


class TestMatrixGame:
    def test_ragged(self):
        with pytest.raises(InvalidInput):
            MatrixGame(["a", "b"], ["x", "y"], [[1, 2], [3]])

    def test_duplicate_labels(self):
        with pytest.raises(InvalidInput):
            MatrixGame(["a", "a"], ["x"], [[1], [2]])

    def test_floats_refused(self):
        with pytest.raises(InvalidInput):
            MatrixGame.from_matrix([[0.5]])

    @given(st.fractions(), st.fractions(), st.fractions())
    def test_rational_associativity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)


class TestMixedStrategy:
    def test_must_sum_to_one(self):
        with pytest.raises(InvalidInput):
            MixedStrategy([Fraction(1, 3), Fraction(1, 3)])

    def test_nonnegative(self):
        with pytest.raises(InvalidInput):
            MixedStrategy([Fraction(3, 2), Fraction(-1, 2)])

    def test_support(self):
        assert MixedStrategy(["2/5", 0, "3/5"]).support == (0, 2)

    def test_roundtrip_dict(self):
        s = MixedStrategy(["1/3", "2/3"])
        back, labels = strategy_from_dict(strategy_to_dict(s, ["a", "b"]))
        assert back == s and labels == ["a", "b"]


class TestSerialization:
    def test_roundtrip(self, game_4v4, tmp_path):
        path = tmp_path / "t1.json"
        save_game(game_4v4, path)
        back = load_game(path)
        assert back == game_4v4
        assert back.origin == game_4v4.origin

    def test_roundtrip_stream(self, game_8v9):
        buf = io.StringIO()
        save_game(game_8v9, buf)
        buf.seek(0)
        assert load_game(buf) == game_8v9

    def test_parses_exact_rational(self):
        game = loads_game(json.dumps({"rows": ["a"], "cols": ["x"], "payoffs": [["1/2"]]}))
        assert game.payoffs[0][0] == Fraction(1, 2)

    def test_unequal_rows(self):
        doc = {"rows": ["a", "b"], "cols": ["x", "y"], "payoffs": [["1", "0"], ["1"]]}
        with pytest.raises(FormatError, match=r"payoffs\[1\]"):
            loads_game(json.dumps(doc))

    def test_duplicate_labels(self):
        doc = {"rows": ["a", "a"], "cols": ["x"], "payoffs": [["1"], ["0"]]}
        with pytest.raises(FormatError, match="rows"):
            loads_game(json.dumps(doc))

    def test_bad_entry(self):
        doc = {"rows": ["a"], "cols": ["x", "y"], "payoffs": [["1", "one/2"]]}
        with pytest.raises(FormatError, match=r"payoffs\[0\]\[1\]"):
            loads_game(json.dumps(doc))

    def test_bad_json_reports_line(self):
        with pytest.raises(FormatError, match="line 2"):
            loads_game('{"rows": ["a"],\n "cols": [}')

    def test_format_rational(self):
        assert format_rational(Fraction(4, 5)) == "4/5"
        assert format_rational(Fraction(-3)) == "-3"
