"""Iterated elimination of pure strategies dominated by another pure strategy."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidInput
from .matrix_game import MatrixGame


class Player(enum.Enum):
    ROW = "row"
    COLUMN = "column"


class Mode(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


class OrderPolicy(enum.Enum):
    """Which side is scanned first; within a side the dominated candidate
    with the lowest index goes first, then the lowest-index dominator.
    The scan restarts from scratch after every removal."""

    COLUMNS_FIRST = "columns_first"
    ROWS_FIRST = "rows_first"


@dataclass(frozen=True)
class EliminationStep:
    player: Player
    eliminated_label: str
    dominator_label: str
    mode: Mode

    def to_dict(self) -> dict:
        return {
            "player": self.player.value,
            "eliminated": self.eliminated_label,
            "dominator": self.dominator_label,
            "mode": self.mode.value,
        }


@dataclass(frozen=True)
class ReducedGame:
    game: MatrixGame
    trace: tuple[EliminationStep, ...]
    row_index_map: tuple[int, ...]  # residual row -> original row
    col_index_map: tuple[int, ...]


def _compare(better, worse, mode: Mode) -> bool:
    """True if vector ``better`` dominates ``worse`` (larger is better)."""
    if mode is Mode.STRICT:
        return all(b > w for b, w in zip(better, worse))
    return all(b >= w for b, w in zip(better, worse)) and any(b > w for b, w in zip(better, worse))


def dominates(game: MatrixGame, player: Player, i: int, j: int, mode: Mode = Mode.WEAK) -> bool:
    """Does strategy ``i`` of ``player`` dominate strategy ``j``?

    Rows maximize, so row ``i`` dominates when its payoffs are at least as
    large; columns minimize, so column ``i`` dominates when its payoffs are
    no larger.
    """
    n = game.n_rows if player is Player.ROW else game.n_cols
    for idx in (i, j):
        if not 0 <= idx < n:
            raise InvalidInput(f"{player.value} index {idx} out of range for {n} strategies")
    if i == j:
        raise InvalidInput("a strategy is never compared with itself")
    if player is Player.ROW:
        return _compare(game.payoffs[i], game.payoffs[j], mode)
    col_i = [-x for x in game.column(i)]
    col_j = [-x for x in game.column(j)]
    return _compare(col_i, col_j, mode)


def _find_dominated(game: MatrixGame, player: Player, mode: Mode):
    n = game.n_rows if player is Player.ROW else game.n_cols
    for victim in range(n):
        for dominator in range(n):
            if dominator != victim and dominates(game, player, dominator, victim, mode):
                return victim, dominator
    return None


def eliminate_iterated(game: MatrixGame, mode: Mode = Mode.WEAK,
                       order_policy: OrderPolicy = OrderPolicy.COLUMNS_FIRST) -> ReducedGame:
    """Remove dominated strategies one at a time until none is left.

    Weak elimination is order dependent; ``order_policy`` pins the order.
    At least one row and one column always survive, since a strategy is
    only removed while its dominator is still present.
    """
    sides = (Player.COLUMN, Player.ROW) if order_policy is OrderPolicy.COLUMNS_FIRST \
        else (Player.ROW, Player.COLUMN)
    rows = list(range(game.n_rows))
    cols = list(range(game.n_cols))
    current = game
    trace = []
    while True:
        for player in sides:
            hit = _find_dominated(current, player, mode)
            if hit is not None:
                break
        else:
            break
        victim, dominator = hit
        if player is Player.ROW:
            labels = current.row_labels
            del rows[victim]
        else:
            labels = current.col_labels
            del cols[victim]
        trace.append(EliminationStep(player, labels[victim], labels[dominator], mode))
        current = game.restrict(rows, cols)
    return ReducedGame(current, tuple(trace), tuple(rows), tuple(cols))


def replay_trace(game: MatrixGame, trace) -> MatrixGame:
    """Apply a recorded elimination sequence, checking every step still holds."""
    rows = list(game.row_labels)
    cols = list(game.col_labels)
    current = game
    for step in trace:
        if step.player is Player.ROW:
            labels, pool = current.row_labels, rows
        else:
            labels, pool = current.col_labels, cols
        try:
            victim = labels.index(step.eliminated_label)
            dominator = labels.index(step.dominator_label)
        except ValueError:
            raise InvalidInput(f"step {step} refers to a strategy no longer present") from None
        if not dominates(current, step.player, dominator, victim, step.mode):
            raise InvalidInput(f"step {step} is not a valid domination")
        pool.remove(step.eliminated_label)
        current = game.restrict([game.row_index(r) for r in rows], [game.col_index(c) for c in cols])
    return current
