import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blotto_rde.analysis import (
    BeliefSet,
    Orientation,
    Perturbation,
    belief_regret,
    column_payoff_matrix,
    entropy,
    expected_regret,
    regret_matrix,
    run_analysis,
    sample_perturbation,
    tremble_delta,
    tremble_experiment,
    uniform_regret_closed_form,
)
from blotto_rde.errors import InvalidInput
from blotto_rde.matrix_game import MatrixGame

F = Fraction
H = F(1, 2)
P1 = [F(2, 5), F(2, 5), F(1, 5)]
EPA = [F(1, 3)] * 3

entries = st.fractions(min_value=-4, max_value=4, max_denominator=5)


class TestEntropy:
    def test_uniform(self):
        assert math.isclose(entropy(EPA).entropy_bits, math.log2(3), abs_tol=1e-12)

    def test_pure(self):
        assert entropy([1, 0, 0]).entropy_bits == 0

    def test_dyadic(self):
        assert entropy([H, F(1, 4), F(1, 4)]).entropy_bits == 1.5

    def test_report(self):
        rep = entropy([H, H, 0], "x")
        assert rep.support_size == 2 and rep.max_possible == 1.0 and rep.strategy_id == "x"


class TestOrientation:
    def test_complement(self, game_4v4):
        assert column_payoff_matrix(game_4v4, Orientation.WIN_COMPLEMENT) == [[H, 0, 0], [0, H, 0], [0, 0, 1]]

    def test_zero_sum(self, game_4v4):
        d = column_payoff_matrix(game_4v4, Orientation.ZERO_SUM)
        assert d == [[-game_4v4.payoffs[j][i] for j in range(3)] for i in range(3)]

    def test_out_of_range(self):
        with pytest.raises(InvalidInput):
            column_payoff_matrix(MatrixGame.from_matrix([[0, 2]]), Orientation.WIN_COMPLEMENT)


class TestRegret:
    def test_4v4_complement(self):
        d = [[H, 0, 0], [0, H, 0], [0, 0, 1]]
        assert expected_regret(d, EPA).expected_regret == 0

    def test_hand_case(self):
        d = [[3, 1], [0, 2]]
        assert regret_matrix(d) == [[0, 1], [3, 0]]
        assert expected_regret(d, [H, H]).expected_regret == H

    @given(entries, st.integers(1, 4), st.integers(1, 4), st.lists(st.fractions(0, 1), min_size=4, max_size=4))
    def test_constant(self, c, n, m, raw):
        sigma = [F(1, n)] * n
        assert expected_regret([[c] * m for _ in range(n)], sigma).expected_regret == 0

    @settings(max_examples=60)
    @given(st.integers(1, 5), st.integers(1, 5), st.data())
    def test_closed_form(self, n, m, data):
        d = data.draw(st.lists(st.lists(entries, min_size=m, max_size=m), min_size=n, max_size=n))
        assert expected_regret(d, [F(1, n)] * n).expected_regret == uniform_regret_closed_form(d)

    def test_dimension(self):
        with pytest.raises(InvalidInput):
            expected_regret([[1, 2]], [H, H])


class TestTremble:
    def test_zero(self, game_4v4):
        assert tremble_delta(game_4v4, [0, 0, 0], EPA) == 0

    def test_cancel(self, game_4v4):
        assert tremble_delta(game_4v4, [F(1, 20), F(-1, 20), 0], EPA) == 0

    def test_one_over_120(self, game_4v4):
        assert tremble_delta(game_4v4, [F(1, 20), 0, F(-1, 20)], EPA) == F(1, 120)

    def test_nash_is_flat(self, game_4v4):
        # every row earns V against the Nash column, so no tremble moves the payoff
        rng = np.random.default_rng(3)
        for _ in range(20):
            eps = sample_perturbation(P1, 0.05, rng).epsilon
            assert tremble_delta(game_4v4, eps, P1) == 0

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32), st.floats(0.001, 0.3))
    def test_perturbation_valid(self, seed, magnitude):
        pert = sample_perturbation(P1, magnitude, np.random.default_rng(seed))
        pert.check(P1)
        assert sum(pert.epsilon) == 0
        assert all(p + e >= 0 for p, e in zip(P1, pert.epsilon))

    def test_perturbation_check(self):
        with pytest.raises(InvalidInput):
            Perturbation((F(1, 10), F(0), F(0)), F(1)).check(P1)

    def test_experiment(self, game_4v4):
        rep = tremble_experiment(game_4v4, P1, {"epa": EPA, "nash": P1}, 0.05, 30, 9)
        assert rep.stats["nash"].max_abs == 0
        assert rep.stats["epa"].max_abs > 0
        assert len(rep.records) == 60
        again = tremble_experiment(game_4v4, P1, {"epa": EPA, "nash": P1}, 0.05, 30, 9)
        assert again.records == rep.records

    def test_zero_trials(self, game_4v4):
        with pytest.raises(InvalidInput):
            tremble_experiment(game_4v4, P1, [EPA], 0.05, 0, 1)


class TestBeliefRegret:
    def test_equalizer(self, game_4v4):
        d = column_payoff_matrix(game_4v4)
        for sigma in (EPA, P1, [1, 0, 0]):
            assert belief_regret(d, BeliefSet([P1], [1]), sigma) == 0

    def test_pure_belief(self, game_4v4):
        d = column_payoff_matrix(game_4v4)
        assert belief_regret(d, BeliefSet([[1, 0, 0]], [1]), EPA) == F(1, 3)

    def test_two_beliefs(self, game_4v4):
        d = column_payoff_matrix(game_4v4)
        assert belief_regret(d, BeliefSet([[1, 0, 0], [0, 1, 0]], [H, H]), EPA) == F(1, 3)

    def test_bad_priors(self):
        with pytest.raises(InvalidInput):
            BeliefSet([[1, 0]], [H])

    def test_dimension(self, game_4v4):
        d = column_payoff_matrix(game_4v4)
        with pytest.raises(InvalidInput):
            belief_regret(d, BeliefSet([[1, 0]], [1]), EPA)


class TestRunAnalysis:
    def test_4v4(self, game_4v4):
        a = run_analysis(game_4v4, seed=4, trials=20, psa_draws=30)
        assert math.isclose(a.entropy["epa_bits"], math.log2(3))
        assert a.entropy["psa_never_above_epa"]
        assert a.regret["epa"] == a.regret["epa_closed_form"]
        assert "nash" in a.tremble.stats
