"""Wall-clock comparison of building the defender's mixture four ways."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from .matrix_game import blotto_game
from .rde import epa_strategy, indifference_support, psa_strategy
from .seeding import derive_seed
from .solver import solve_maximin, support_enumeration

OPS = ("epa", "psa", "maximin", "support_enumeration")


@dataclass(frozen=True)
class BenchRow:
    size: int
    op: str
    median_ns: int
    trials: int


def _median_ns(fn, trials: int) -> int:
    samples = []
    for t in range(trials):
        start = time.perf_counter_ns()
        fn(t)
        samples.append(time.perf_counter_ns() - start)
    return int(statistics.median(samples))


def run_bench(sizes, trials: int = 5, seed: int = 0) -> list[BenchRow]:
    """Median time per op for each symmetric game ``g = p = size``.

    The support used by EPA and PSA is computed up front and not timed;
    tasks run one after another so measurements do not overlap.
    """
    if trials < 1:
        raise ValueError("bench needs at least one trial")
    rows = []
    for size in sizes:
        game = blotto_game(size, size)
        solved = solve_maximin(game)
        support = indifference_support(game, solved.row_strategy, solved.value)
        n = game.n_cols
        base = derive_seed(seed, "bench-psa", size)
        timers = {
            "epa": lambda t: epa_strategy(support, n),
            "psa": lambda t: psa_strategy(support, n, base + t),
            "maximin": lambda t: solve_maximin(game),
            "support_enumeration": lambda t: support_enumeration(game),
        }
        for op in OPS:
            rows.append(BenchRow(size, op, _median_ns(timers[op], trials), trials))
    return rows
