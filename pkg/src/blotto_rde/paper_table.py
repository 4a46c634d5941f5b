"""The published Blotto value table and its end-to-end reproduction."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .dominance import Mode, eliminate_iterated
from .matrix_game import blotto_game
from .rde import run_rde
from .solver import SupportCriterion, first_equilibrium

# (policemen, guerrillas, printed value), in published order
PUBLISHED_VALUES = (
    (9, 8, "0.80"),
    (5, 5, "0.83"),
    (4, 4, "0.80"),
    (6, 5, "0.66"),
    (8, 8, "0.88"),
    (11, 10, "0.83"),
    (7, 6, "0.75"),
    (7, 7, "0.875"),
    (6, 6, "0.857"),
    (9, 9, "0.90"),
    (10, 9, "0.80"),
)

TOLERANCE = Fraction(5, 1000)


@dataclass(frozen=True)
class TableRow:
    policemen: int
    guerrillas: int
    printed: str
    nash_value: Fraction
    epa_value: Fraction

    @property
    def printed_value(self) -> Fraction:
        return Fraction(self.printed)

    @property
    def exact_match(self) -> bool:
        return self.nash_value == self.epa_value

    @property
    def within_tolerance(self) -> bool:
        target = self.printed_value
        return abs(self.nash_value - target) <= TOLERANCE and abs(self.epa_value - target) <= TOLERANCE

    @property
    def truncation_match(self) -> bool:
        """Does the printed figure equal the exact value cut (not rounded)
        to the same number of decimals?"""
        places = -Decimal(self.printed).as_tuple().exponent
        scaled = self.nash_value * 10 ** places
        return Fraction(scaled.numerator // scaled.denominator, 10 ** places) == self.printed_value

    @property
    def ok(self) -> bool:
        return self.exact_match and self.within_tolerance


def reproduce_row(p: int, g: int, printed: str,
                  criterion: SupportCriterion = SupportCriterion.INDIFFERENCE_SET) -> TableRow:
    """Nash value from support enumeration on the full game; EPA value from
    the reactive-defence pipeline on the weakly reduced game."""
    game = blotto_game(g, p)
    nash = first_equilibrium(game).value
    reduced = eliminate_iterated(game, Mode.WEAK).game
    epa = run_rde(reduced, criterion).value_under_epa
    return TableRow(p, g, printed, nash, epa)


def reproduce_table(criterion: SupportCriterion = SupportCriterion.INDIFFERENCE_SET) -> list[TableRow]:
    return [reproduce_row(p, g, printed, criterion) for p, g, printed in PUBLISHED_VALUES]
