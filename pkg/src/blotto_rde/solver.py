"""Maximin and Nash solutions of zero-sum matrix games, in exact arithmetic.

Two independent routes are provided:

* :func:`solve_maximin` solves the row player's maximin linear program with
  a rational simplex.
* :func:`support_enumeration` solves the indifference equations on every
  equal-size pair of supports, visited by size and then lexicographically.

They share nothing but the game, so agreement between them is a real check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import InternalError, InvalidInput
from .exact import simplex_max, solve_linear
from .matrix_game import MatrixGame, MixedStrategy


class SupportCriterion(enum.Enum):
    NASH_SUPPORT = "nash"
    INDIFFERENCE_SET = "indiff"
    POST_ELIMINATION_ACTIVE = "active"


class Method(enum.Enum):
    MAXIMIN_LP = "maximin_lp"
    SUPPORT_ENUMERATION = "support_enumeration"


@dataclass(frozen=True)
class SupportSet:
    """Sorted, nonempty set of strategy indices plus how it was chosen."""

    indices: tuple[int, ...]
    criterion: SupportCriterion

    def __post_init__(self):
        idx = tuple(sorted(set(self.indices)))
        if not idx:
            raise InvalidInput("support set must be nonempty")
        if idx[0] < 0:
            raise InvalidInput(f"negative index in support {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return len(self.indices)

    def __contains__(self, j) -> bool:
        return j in self.indices

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def check_bounds(self, n: int) -> None:
        if self.indices[-1] >= n:
            raise InvalidInput(f"support index {self.indices[-1]} out of range for {n} strategies")


@dataclass(frozen=True)
class SolveResult:
    row_strategy: MixedStrategy
    value: Fraction
    method: Method
    row_support: SupportSet
    column_support: SupportSet
    column_strategy: MixedStrategy | None = None
    # singular indifference systems skipped during support enumeration
    skipped_singular: int = 0


class BestResponse(NamedTuple):
    value: Fraction
    rows: frozenset[int]


def best_response_value(game: MatrixGame, q: Sequence[Fraction]) -> BestResponse:
    """Best pure-row payoff against column mixture ``q``, with all maximizers."""
    values = game.row_values(list(q))
    best = max(values)
    return BestResponse(best, frozenset(i for i, v in enumerate(values) if v == best))


def worst_column_value(game: MatrixGame, p: Sequence[Fraction]) -> Fraction:
    return min(game.column_values(list(p)))


# --- maximin LP ---------------------------------------------------------

def _normalizer(game: MatrixGame) -> tuple[Fraction, Fraction]:
    entries = [x for row in game.payoffs for x in row]
    return min(entries), max(entries)


def _lp_maximin(payoffs: Sequence[Sequence[Fraction]], lo: Fraction, span: Fraction):
    """Maximin of the normalized matrix ``1 + (M - lo)/span`` (entries >= 1).

    Solves max sum(y) s.t. M' y <= 1, y >= 0; the row strategy is read off
    the duals of the row constraints.
    """
    scaled = [[1 + (x - lo) / span for x in row] for row in payoffs]
    n_cols = len(scaled[0])
    opt, _, duals = simplex_max([Fraction(1)] * n_cols, scaled, [Fraction(1)] * len(scaled))
    value_scaled = 1 / opt
    p = [d * value_scaled for d in duals]
    return lo + (value_scaled - 1) * span, p


def solve_maximin(game: MatrixGame) -> SolveResult:
    """Row player's maximin strategy ``p*`` and the game value ``V``.

    Among several maximin strategies the one with the lexicographically
    first smallest support is returned, matching the first equilibrium
    that support enumeration would produce. The payoffs are normalized
    before pivoting, so affine rescalings of the game give the same ``p*``.
    """
    m = game.n_rows
    lo, hi = _normalizer(game)
    if lo == hi:
        p = MixedStrategy.pure(m, 0)
        value = lo
    else:
        span = hi - lo
        value, _ = _lp_maximin(game.payoffs, lo, span)
        p = None
        for size in range(1, m + 1):
            for rows in combinations(range(m), size):
                sub_value, sub_p = _lp_maximin([game.payoffs[i] for i in rows], lo, span)
                if sub_value == value:
                    full = [Fraction(0)] * m
                    for i, w in zip(rows, sub_p):
                        full[i] = w
                    p = MixedStrategy(full)
                    break
            if p is not None:
                break
    col_vals = game.column_values(p.weights)
    return SolveResult(
        row_strategy=p,
        value=value,
        method=Method.MAXIMIN_LP,
        row_support=SupportSet(p.support, SupportCriterion.NASH_SUPPORT),
        column_support=SupportSet(tuple(j for j, v in enumerate(col_vals) if v == value),
                                  SupportCriterion.INDIFFERENCE_SET),
    )


# --- support enumeration ------------------------------------------------

def _indifferent_mix(block: Sequence[Sequence[Fraction]]):
    """Weights over the columns of the square ``block`` equalizing its rows.

    Unknowns are the k weights and the common payoff v:
    ``block @ w - v = 0`` for every row and ``sum(w) = 1``.
    Returns ``(weights, v)`` or ``None`` if singular.
    """
    k = len(block)
    a = [list(row) + [Fraction(-1)] for row in block]
    a.append([Fraction(1)] * k + [Fraction(0)])
    b = [Fraction(0)] * k + [Fraction(1)]
    sol = solve_linear(a, b)
    if sol is None:
        return None
    return sol[:k], sol[k]


def _support_pairs(m: int, n: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    for size in range(1, min(m, n) + 1):
        for rows in combinations(range(m), size):
            for cols in combinations(range(n), size):
                yield rows, cols


def support_enumeration(game: MatrixGame) -> list[SolveResult]:
    """Every equilibrium found on equal-size supports, in enumeration order.

    Supports are visited by size, then row support, then column support,
    each lexicographically. A candidate is kept when both indifference
    systems are nonsingular, both strategies are nonnegative, and neither
    player has a profitable pure deviation. Zero weights inside a support
    are allowed, so degenerate games still yield an equilibrium; a profile
    reached from several supports is reported once, at its first visit.
    """
    m, n = game.shape
    M = game.payoffs
    found = []
    seen = set()
    skipped = 0
    for rows, cols in _support_pairs(m, n):
        col_mix = _indifferent_mix([[M[i][j] for j in cols] for i in rows])
        row_mix = _indifferent_mix([[M[i][j] for i in rows] for j in cols])
        if col_mix is None or row_mix is None:
            skipped += 1
            continue
        q_part, v = col_mix
        p_part, v_row = row_mix
        if any(w < 0 for w in q_part) or any(w < 0 for w in p_part):
            continue
        q = [Fraction(0)] * n
        for j, w in zip(cols, q_part):
            q[j] = w
        p = [Fraction(0)] * m
        for i, w in zip(rows, p_part):
            p[i] = w
        if max(game.row_values(q)) != v or min(game.column_values(p)) != v_row:
            continue
        key = (tuple(p), tuple(q))
        if key in seen:
            continue
        seen.add(key)
        found.append((p, q, v, rows, cols))

    return [
        SolveResult(
            row_strategy=MixedStrategy(p),
            value=v,
            method=Method.SUPPORT_ENUMERATION,
            row_support=SupportSet(tuple(i for i in rows if p[i]), SupportCriterion.NASH_SUPPORT),
            column_support=SupportSet(tuple(j for j in cols if q[j]), SupportCriterion.NASH_SUPPORT),
            column_strategy=MixedStrategy(q),
            skipped_singular=skipped,
        )
        for p, q, v, rows, cols in found
    ]


def first_equilibrium(game: MatrixGame) -> SolveResult:
    results = support_enumeration(game)
    if not results:
        # every zero-sum game has a square nonsingular kernel, so this
        # signals a bug rather than a hard input
        raise InternalError("support enumeration found no equilibrium")
    return results[0]
