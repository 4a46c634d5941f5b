"""Reactive defense: the row player keeps its maximin strategy while the
defender mixes uniformly over the columns that strategy leaves it
indifferent between.

Against ``p*`` every column in the indifference set pays exactly ``V``, so
any mixture over that set (uniform or random) also yields ``V``. Whether
the uniform mixture also caps every *other* row strategy at ``V`` is a
separate question; :func:`verify_neutralization` measures the answer
instead of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .dominance import Mode, eliminate_iterated
from .errors import InternalError, InvalidInput
from .matrix_game import MatrixGame, MixedStrategy
from .seeding import check_seed
from .solver import SupportCriterion, SupportSet, first_equilibrium, solve_maximin

# absolute tolerance used only when p* or V arrive as floats
FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class NeutralizationReport:
    support: tuple[int, ...]
    per_column_payoffs: tuple[Fraction, ...]
    value_under_q: Fraction
    value_equality_holds: bool
    best_response_value: Fraction
    gap: Fraction
    witness_rows: frozenset[int]

    @property
    def inequality_holds(self) -> bool:
        return self.gap == 0


@dataclass(frozen=True)
class RdeResult:
    p_star: MixedStrategy
    value: Fraction
    support: SupportSet
    q_epa: MixedStrategy
    value_under_epa: Fraction
    exploitability_gap: Fraction
    witness_rows: frozenset[int]
    neutralization: NeutralizationReport


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def indifference_support(game: MatrixGame, p_star: Sequence, value,
                         criterion: SupportCriterion = SupportCriterion.INDIFFERENCE_SET) -> SupportSet:
    """Columns the defender treats as active against ``p_star``.

    ``INDIFFERENCE_SET`` keeps every column paying exactly ``value``;
    ``POST_ELIMINATION_ACTIVE`` keeps the columns surviving iterated weak
    dominance; ``NASH_SUPPORT`` takes the support of the first
    support-enumeration column strategy.
    """
    weights = list(p_star)
    if len(weights) != game.n_rows:
        raise InvalidInput(f"p* has {len(weights)} weights, game has {game.n_rows} rows")
    if criterion is SupportCriterion.INDIFFERENCE_SET:
        if all(_is_exact(w) for w in weights) and _is_exact(value):
            col_vals = game.column_values([Fraction(w) for w in weights])
            indices = [j for j, v in enumerate(col_vals) if v == value]
        else:
            col_vals = [sum(float(w) * float(x) for w, x in zip(weights, game.column(j)))
                        for j in range(game.n_cols)]
            indices = [j for j, v in enumerate(col_vals) if abs(v - float(value)) <= FLOAT_TOLERANCE]
    elif criterion is SupportCriterion.POST_ELIMINATION_ACTIVE:
        indices = list(eliminate_iterated(game, Mode.WEAK).col_index_map)
    elif criterion is SupportCriterion.NASH_SUPPORT:
        indices = list(first_equilibrium(game).column_strategy.support)
    else:
        raise InvalidInput(f"unknown criterion {criterion!r}")
    if not indices:
        raise InternalError("empty indifference support; value is not the maximin value of this game")
    return SupportSet(tuple(indices), criterion)


def epa_strategy(support: SupportSet | Sequence[int], n_cols: int) -> MixedStrategy:
    """Weight ``1/k`` on each of the ``k`` support indices, zero elsewhere."""
    indices = tuple(support)
    if not indices:
        raise InvalidInput("EPA needs a nonempty support")
    if min(indices) < 0 or max(indices) >= n_cols or len(set(indices)) != len(indices):
        raise InvalidInput(f"support {indices} invalid for {n_cols} columns")
    share = Fraction(1, len(indices))
    chosen = set(indices)
    return MixedStrategy(share if j in chosen else Fraction(0) for j in range(n_cols))


def psa_strategy(support: SupportSet | Sequence[int], n_cols: int, seed: int) -> MixedStrategy:
    """A uniformly random distribution over the support (flat Dirichlet).

    Draws ``k`` standard exponentials, converts each double exactly to a
    Fraction and normalizes in rational arithmetic, so the weights sum to
    exactly 1.
    """
    indices = tuple(support)
    if not indices:
        raise InvalidInput("PSA needs a nonempty support")
    if min(indices) < 0 or max(indices) >= n_cols or len(set(indices)) != len(indices):
        raise InvalidInput(f"support {indices} invalid for {n_cols} columns")
    rng = np.random.default_rng(check_seed(seed))
    draws = [Fraction(float(x)) for x in rng.standard_exponential(len(indices))]
    total = sum(draws)
    if total == 0:
        draws, total = [Fraction(1)] * len(indices), Fraction(len(indices))
    weights = [Fraction(0)] * n_cols
    for j, d in zip(indices, draws):
        weights[j] = d / total
    return MixedStrategy(weights)


def psa_batch(support, n_cols: int, seed: int, count: int) -> list[MixedStrategy]:
    """``count`` PSA draws; draw ``i`` uses seed ``seed + i``."""
    base = check_seed(seed)
    return [psa_strategy(support, n_cols, base + i) for i in range(count)]


def game_value(game: MatrixGame, p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    """``p^T M q`` exactly."""
    p, q = list(p), list(q)
    if len(p) != game.n_rows or len(q) != game.n_cols:
        raise InvalidInput(f"strategies of length ({len(p)}, {len(q)}) for a {game.shape} game")
    return sum((w * v for w, v in zip(p, game.row_values(q))), Fraction(0))


def _neutralization(game: MatrixGame, p_star, q, value) -> NeutralizationReport:
    q = list(q)
    support = tuple(j for j, w in enumerate(q) if w != 0)
    col_vals = game.column_values(list(p_star))
    per_column = tuple(col_vals[j] for j in support)
    under_q = sum((q[j] * col_vals[j] for j in support), Fraction(0))
    row_vals = game.row_values(q)
    best = max(row_vals)
    return NeutralizationReport(
        support=support,
        per_column_payoffs=per_column,
        value_under_q=under_q,
        value_equality_holds=all(v == value for v in per_column) and under_q == value,
        best_response_value=best,
        gap=best - value,
        witness_rows=frozenset(i for i, v in enumerate(row_vals) if v > value),
    )


def verify_neutralization(game: MatrixGame, p_star, q, value) -> NeutralizationReport:
    """Audit a column strategy ``q`` built on the indifference set of ``p_star``.

    Checks that each column of ``q``'s support pays ``value`` against
    ``p_star`` and that ``p_star`` against ``q`` yields ``value``. It also
    reports ``gap = max_i e_i^T M q - value`` with the rows that earn more
    than ``value``; a positive gap is reported, never raised.
    """
    p_star, q = list(p_star), list(q)
    if len(q) != game.n_cols:
        raise InvalidInput(f"q has {len(q)} weights, game has {game.n_cols} columns")
    indiff = set(indifference_support(game, p_star, value).indices)
    off = [j for j, w in enumerate(q) if w != 0 and j not in indiff]
    if off:
        raise InvalidInput(f"q puts weight on columns {off} outside the indifference set")
    return _neutralization(game, p_star, q, value)


def run_rde(game: MatrixGame,
            criterion: SupportCriterion = SupportCriterion.INDIFFERENCE_SET) -> RdeResult:
    """Maximin for the row player, uniform defence over the chosen support."""
    solved = solve_maximin(game)
    support = indifference_support(game, solved.row_strategy, solved.value, criterion)
    q_epa = epa_strategy(support, game.n_cols)
    report = _neutralization(game, solved.row_strategy, q_epa, solved.value)
    return RdeResult(
        p_star=solved.row_strategy,
        value=solved.value,
        support=support,
        q_epa=q_epa,
        value_under_epa=game_value(game, solved.row_strategy, q_epa),
        exploitability_gap=report.gap,
        witness_rows=report.witness_rows,
        neutralization=report,
    )


def _uniform_on(indices, n: int) -> list[Fraction]:
    share = Fraction(1, len(indices))
    return [share if j in indices else Fraction(0) for j in range(n)]


def in_uk(z: Sequence[Fraction], k: int) -> bool:
    """Is ``z`` the uniform distribution over some size-``k`` support?"""
    positive = [w for w in z if w != 0]
    return len(positive) == k and all(w == Fraction(1, k) for w in positive)


def check_uk_nonconvexity(n: int, k: int, s1: Sequence[int], s2: Sequence[int]) -> bool:
    """True when the midpoint of two distinct uniform-support strategies
    falls outside the family of uniform size-``k`` strategies."""
    a, b = set(s1), set(s2)
    for s, raw in ((a, s1), (b, s2)):
        if len(s) != len(raw) or len(s) != k or k < 1:
            raise InvalidInput(f"support {list(raw)} is not a set of size {k}")
        if not all(isinstance(j, int) and 0 <= j < n for j in s):
            raise InvalidInput(f"support {list(raw)} not within 0..{n - 1}")
    if a == b:
        raise InvalidInput("supports must differ")
    y1, y2 = _uniform_on(a, n), _uniform_on(b, n)
    mid = [(u + v) / 2 for u, v in zip(y1, y2)]
    return not in_uk(mid, k)


def exhaustive_uk_check(max_n: int = 8) -> tuple[int, int]:
    """Run :func:`check_uk_nonconvexity` on every distinct pair for
    ``n <= max_n`` and ``k < n``; returns ``(pairs_checked, failures)``."""
    checked = failures = 0
    for n in range(2, max_n + 1):
        for k in range(1, n):
            for s1, s2 in combinations(combinations(range(n), k), 2):
                checked += 1
                if not check_uk_nonconvexity(n, k, s1, s2):
                    failures += 1
    return checked, failures
