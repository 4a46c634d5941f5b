"""Zero-sum matrix games with exact rational payoffs.

Payoffs are always from the row player's point of view: the row player
maximizes, the column player minimizes. Every entry is a
:class:`fractions.Fraction`; floats never enter a game.

The two-arsenal "guerrillas vs police" Colonel Blotto family is built by
:func:`build_blotto`. Each side splits its units between two arsenals;
splits are unordered, and the 50/50 chance of which arsenal receives the
larger party is folded into :func:`blotto_payoff`.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Iterator, Sequence

from .errors import FormatError, InvalidInput, Unsupported

Rational = Fraction

HALF = Fraction(1, 2)


def as_rational(value) -> Fraction:
    """Coerce ints, integer/rational literals and Fractions to Fraction.

    Floats are refused: a float payoff would silently carry binary
    rounding into every downstream equality test.
    """
    if isinstance(value, bool):
        raise InvalidInput(f"boolean is not a payoff: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational literal: {value!r}") from exc
    raise InvalidInput(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Render ``value`` as ``"p/q"``, or ``"n"`` when it is an integer."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class BlottoSpec:
    """Attacker (row) and defender (column) unit counts.

    Only two battlefields are modelled, and ties go to the defender.
    """

    attacker_units: int
    defender_units: int
    battlefields: int = 2
    tie_rule: str = "defender_wins_ties"

    def __post_init__(self):
        if self.battlefields != 2:
            raise Unsupported(f"only 2 battlefields are supported, got {self.battlefields}")
        if self.tie_rule != "defender_wins_ties":
            raise Unsupported(f"unknown tie rule {self.tie_rule!r}")
        for name in ("attacker_units", "defender_units"):
            units = getattr(self, name)
            if isinstance(units, bool) or not isinstance(units, int) or units < 1:
                raise InvalidInput(f"{name} must be a positive integer, got {units!r}")

    @property
    def g(self) -> int:
        return self.attacker_units

    @property
    def p(self) -> int:
        return self.defender_units


@dataclass(frozen=True, order=True)
class Split:
    """An unordered division of a player's units over the two arsenals."""

    larger: int
    smaller: int

    def __post_init__(self):
        if not (self.larger >= self.smaller >= 0):
            raise InvalidInput(f"malformed split {self.larger}-{self.smaller}")

    @property
    def units(self) -> int:
        return self.larger + self.smaller

    @property
    def label(self) -> str:
        return f"{self.larger}-{self.smaller}"

    def __iter__(self) -> Iterator[int]:
        yield self.larger
        yield self.smaller


def splits(units: int) -> list[Split]:
    """All two-part splits of ``units``, heaviest first (``4 -> 4-0, 3-1, 2-2``)."""
    if isinstance(units, bool) or not isinstance(units, int) or units < 1:
        raise InvalidInput(f"units must be a positive integer, got {units!r}")
    return [Split(a, units - a) for a in range(units, (units + 1) // 2 - 1, -1)]


def _attacker_captures(pairs: Iterable[tuple[int, int]]) -> bool:
    # strict: a tie at an arsenal (including 0 vs 0) is a defender hold
    return any(attack > defend for attack, defend in pairs)


def blotto_payoff(g_split: Split, p_split: Split) -> Fraction:
    """Attacker's expected payoff for one pair of splits.

    With probability 1/2 the attacker's larger party meets the defender's
    larger garrison (aligned), otherwise the defender's smaller one
    (crossed). The attacker wins a matchup by capturing either arsenal.
    """
    ga, gb = g_split
    pa, pb = p_split
    aligned = _attacker_captures(((ga, pa), (gb, pb)))
    crossed = _attacker_captures(((ga, pb), (gb, pa)))
    return HALF * aligned + HALF * crossed


@dataclass(frozen=True)
class MatrixGame:
    """Row-maximizer payoff matrix with labelled strategies."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    payoffs: tuple[tuple[Fraction, ...], ...]
    origin: BlottoSpec | None = field(default=None, compare=False)

    def __init__(self, row_labels, col_labels, payoffs, origin=None):
        rows = tuple(str(label) for label in row_labels)
        cols = tuple(str(label) for label in col_labels)
        matrix = tuple(tuple(as_rational(x) for x in row) for row in payoffs)
        if not rows or not cols:
            raise InvalidInput("a game needs at least one row and one column")
        if len(set(rows)) != len(rows):
            raise InvalidInput(f"duplicate row labels: {rows}")
        if len(set(cols)) != len(cols):
            raise InvalidInput(f"duplicate column labels: {cols}")
        if len(matrix) != len(rows):
            raise InvalidInput(f"{len(matrix)} payoff rows for {len(rows)} row labels")
        for i, row in enumerate(matrix):
            if len(row) != len(cols):
                raise InvalidInput(f"payoff row {i} has {len(row)} entries, expected {len(cols)}")
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        object.__setattr__(self, "payoffs", matrix)
        object.__setattr__(self, "origin", origin)

    @classmethod
    def from_matrix(cls, payoffs: Sequence[Sequence], origin=None) -> MatrixGame:
        """Build a game with generic labels ``r0.., c0..``."""
        payoffs = [list(row) for row in payoffs]
        n_cols = len(payoffs[0]) if payoffs else 0
        return cls(
            [f"r{i}" for i in range(len(payoffs))],
            [f"c{j}" for j in range(n_cols)],
            payoffs,
            origin,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.col_labels)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.payoffs)

    def row_index(self, label: str) -> int:
        return self.row_labels.index(label)

    def col_index(self, label: str) -> int:
        return self.col_labels.index(label)

    def column_values(self, p: Sequence[Fraction]) -> list[Fraction]:
        """Row mixture ``p`` against each pure column: ``p^T M e_j``."""
        if len(p) != self.n_rows:
            raise InvalidInput(f"row strategy has {len(p)} weights, game has {self.n_rows} rows")
        return [sum((p[i] * self.payoffs[i][j] for i in range(self.n_rows)), Fraction(0))
                for j in range(self.n_cols)]

    def row_values(self, q: Sequence[Fraction]) -> list[Fraction]:
        """Each pure row against column mixture ``q``: ``e_i^T M q``."""
        if len(q) != self.n_cols:
            raise InvalidInput(f"column strategy has {len(q)} weights, game has {self.n_cols} columns")
        return [sum((w * x for w, x in zip(q, row)), Fraction(0)) for row in self.payoffs]

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> MatrixGame:
        """Subgame on the given row and column indices (order kept)."""
        return MatrixGame(
            [self.row_labels[i] for i in rows],
            [self.col_labels[j] for j in cols],
            [[self.payoffs[i][j] for j in cols] for i in rows],
            self.origin,
        )

    def affine(self, scale: Fraction, shift: Fraction) -> MatrixGame:
        scale, shift = as_rational(scale), as_rational(shift)
        return MatrixGame(self.row_labels, self.col_labels,
                          [[scale * x + shift for x in row] for row in self.payoffs], self.origin)


@dataclass(frozen=True)
class MixedStrategy:
    """Probability vector over one side's strategies; sums to exactly 1."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Iterable):
        ws = tuple(as_rational(w) for w in weights)
        if not ws:
            raise InvalidInput("a mixed strategy needs at least one weight")
        if any(w < 0 for w in ws):
            raise InvalidInput(f"negative weight in {[format_rational(w) for w in ws]}")
        if sum(ws) != 1:
            raise InvalidInput(f"weights sum to {format_rational(sum(ws))}, not 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def pure(cls, n: int, index: int) -> MixedStrategy:
        if not 0 <= index < n:
            raise InvalidInput(f"pure strategy index {index} out of range for {n}")
        return cls(Fraction(int(i == index)) for i in range(n))

    @classmethod
    def uniform(cls, n: int) -> MixedStrategy:
        return cls(Fraction(1, n) for _ in range(n))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.weights)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    def to_floats(self) -> list[float]:
        return [float(w) for w in self.weights]

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(w) for w in self.weights) + ")"


def build_blotto(spec: BlottoSpec) -> MatrixGame:
    """Payoff matrix of the two-arsenal game; rows attacker, columns defender."""
    if not isinstance(spec, BlottoSpec):
        raise InvalidInput("build_blotto expects a BlottoSpec")
    rows = splits(spec.attacker_units)
    cols = splits(spec.defender_units)
    return MatrixGame(
        [s.label for s in rows],
        [s.label for s in cols],
        [[blotto_payoff(r, c) for c in cols] for r in rows],
        origin=spec,
    )


def blotto_game(g: int, p: int) -> MatrixGame:
    """Shorthand for ``build_blotto(BlottoSpec(g, p))``."""
    return build_blotto(BlottoSpec(g, p))


# --- serialization -------------------------------------------------------

def game_to_dict(game: MatrixGame) -> dict:
    data = {
        "rows": list(game.row_labels),
        "cols": list(game.col_labels),
        "payoffs": [[format_rational(x) for x in row] for row in game.payoffs],
    }
    if game.origin is not None:
        data["origin"] = {"g": game.origin.g, "p": game.origin.p}
    return data


def _parse_entry(text, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise FormatError(f"payoff must be a rational string, got {text!r}", where)
    try:
        return as_rational(text)
    except InvalidInput as exc:
        raise FormatError(str(exc), where) from None


def _label_list(data: dict, key: str) -> list[str]:
    labels = data.get(key)
    if not isinstance(labels, list) or not labels or not all(isinstance(s, str) for s in labels):
        raise FormatError("expected a non-empty list of strings", f"field '{key}'")
    if len(set(labels)) != len(labels):
        dupes = sorted({s for s in labels if labels.count(s) > 1})
        raise FormatError(f"duplicate labels {dupes}", f"field '{key}'")
    return labels


def game_from_dict(data) -> MatrixGame:
    if not isinstance(data, dict):
        raise FormatError("top level must be a JSON object", "document")
    rows = _label_list(data, "rows")
    cols = _label_list(data, "cols")
    payoffs = data.get("payoffs")
    if not isinstance(payoffs, list):
        raise FormatError("expected a list of rows", "field 'payoffs'")
    if len(payoffs) != len(rows):
        raise FormatError(f"{len(payoffs)} rows but {len(rows)} row labels", "field 'payoffs'")
    matrix = []
    for i, row in enumerate(payoffs):
        if not isinstance(row, list) or len(row) != len(cols):
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise FormatError(f"expected {len(cols)} entries, got {got}", f"payoffs[{i}]")
        matrix.append([_parse_entry(x, f"payoffs[{i}][{j}]") for j, x in enumerate(row)])
    origin = None
    if data.get("origin") is not None:
        raw = data["origin"]
        try:
            origin = BlottoSpec(int(raw["g"]), int(raw["p"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad origin: {exc}", "field 'origin'") from None
    return MatrixGame(rows, cols, matrix, origin)


def dumps_game(game: MatrixGame) -> str:
    return json.dumps(game_to_dict(game), indent=2) + "\n"


def loads_game(text: str) -> MatrixGame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return game_from_dict(data)


def save_game(game: MatrixGame, destination: str | os.PathLike | IO[str]) -> None:
    """Write ``game`` as UTF-8 JSON to a path or text stream."""
    text = dumps_game(game)
    if isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="utf-8") as fh:
        fh.write(text)


def load_game(source: str | os.PathLike | IO[str]) -> MatrixGame:
    """Read a game written by :func:`save_game`.

    Raises FormatError on malformed content; OSError propagates for
    missing or unreadable files.
    """
    if hasattr(source, "read"):
        return loads_game(source.read())
    with open(source, encoding="utf-8") as fh:
        return loads_game(fh.read())


def strategy_to_dict(strategy: MixedStrategy, labels: Sequence[str]) -> dict:
    return {
        "labels": list(labels),
        "weights": [format_rational(w) for w in strategy],
        "decimal": [float(w) for w in strategy],
    }


def strategy_from_dict(data) -> tuple[MixedStrategy, list[str]]:
    if not isinstance(data, dict) or not isinstance(data.get("weights"), list):
        raise FormatError("expected an object with a 'weights' list", "strategy")
    weights = [_parse_entry(w, f"weights[{i}]") for i, w in enumerate(data["weights"])]
    labels = data.get("labels") or [str(i) for i in range(len(weights))]
    if len(labels) != len(weights):
        raise FormatError(f"{len(labels)} labels for {len(weights)} weights", "strategy")
    try:
        return MixedStrategy(weights), list(labels)
    except InvalidInput as exc:
        raise FormatError(str(exc), "strategy") from None
