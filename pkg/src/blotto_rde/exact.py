"""Exact rational linear algebra: Gaussian elimination and a dense simplex.

Both routines work on lists of :class:`~fractions.Fraction` and never
compare against a tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_linear(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve the square system ``a x = b``; ``None`` when ``a`` is singular."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col]
        inv = ONE / lead[col]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor:
                factor *= inv
                row = aug[r]
                for c in range(col, n + 1):
                    row[c] -= factor * lead[c]
    return [aug[i][n] / aug[i][i] for i in range(n)]


class Unbounded(ArithmeticError):
    pass


def simplex_max(c: Sequence[Fraction], a: Sequence[Sequence[Fraction]],
                b: Sequence[Fraction]) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Maximize ``c.x`` subject to ``a x <= b``, ``x >= 0`` with ``b >= 0``.

    The slack basis is feasible at the origin, so no phase one is needed.
    Bland's rule (lowest index enters, lowest basic index leaves on ties)
    guarantees termination on degenerate problems.

    Returns ``(optimum, x, y)`` where ``y`` are the optimal dual
    multipliers of the ``<=`` constraints.
    """
    m, n = len(a), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("simplex_max needs a nonnegative right-hand side")
    # tableau columns: n structural, m slack, then rhs
    tab = [[Fraction(x) for x in a[i]] + [ONE if k == i else ZERO for k in range(m)] + [Fraction(b[i])]
           for i in range(m)]
    # reduced-cost row stored as (z_j - c_j); optimal when all >= 0
    obj = [-Fraction(x) for x in c] + [ZERO] * m + [ZERO]
    basis = list(range(n, n + m))
    width = n + m

    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            coef = tab[i][entering]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded("objective is unbounded")
        _, leave = best
        prow = tab[leave]
        inv = ONE / prow[entering]
        for k in range(width + 1):
            prow[k] *= inv
        for i in range(m):
            if i != leave and tab[i][entering]:
                f = tab[i][entering]
                row = tab[i]
                for k in range(width + 1):
                    if prow[k]:
                        row[k] -= f * prow[k]
        f = obj[entering]
        for k in range(width + 1):
            if prow[k]:
                obj[k] -= f * prow[k]
        basis[leave] = entering

    x = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][-1]
    duals = [obj[n + i] for i in range(m)]
    return obj[-1], x, duals
