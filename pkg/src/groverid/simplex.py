"""Exact phase-1 simplex for rational equality systems.

Decides feasibility of  A x = b, x >= 0  over the rationals by
minimizing the total mass of one artificial variable per row, pivoting
with Bland's smallest-index rule.  Bland's rule never cycles, so the
solver always terminates, and every verdict is exact: the system is
feasible precisely when the optimal artificial mass is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Phase1Result:
    feasible: bool
    x: tuple[Fraction, ...]
    objective: Fraction
    pivots: int


def phase1_feasible(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Phase1Result:
    """Solve the phase-1 problem for A x = b, x >= 0.

    Returns the optimal artificial mass (zero iff feasible) and, when
    feasible, an exact basic feasible point x.  Deterministic: identical
    inputs produce the identical pivot sequence and solution.
    """
    m = len(rows)
    if m == 0:
        return Phase1Result(True, (), ZERO, 0)
    n = len(rows[0])
    if any(len(r) != n for r in rows) or len(rhs) != m:
        raise ValueError("ragged system")

    ncols = n + m  # original variables then one artificial per row
    tableau: list[list[Fraction]] = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        b = Fraction(b)
        entries = [Fraction(v) for v in row]
        if b < 0:
            b = -b
            entries = [-v for v in entries]
        full = entries + [ZERO] * m + [b]
        full[n + i] = ONE
        tableau.append(full)
    basis = [n + i for i in range(m)]

    # Reduced-cost row for minimizing the artificial mass; the final slot
    # carries minus the current objective so it updates like any column.
    obj = [ZERO] * n + [ONE] * m + [ZERO]
    for row in tableau:
        for j in range(ncols + 1):
            if row[j]:
                obj[j] -= row[j]

    pivots = 0
    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            break
        pivot_row = None
        best_ratio = None
        for i in range(m):
            a = tableau[i][col]
            if a > 0:
                ratio = tableau[i][-1] / a
                key = (ratio, basis[i])
                if best_ratio is None or key < best_ratio:
                    best_ratio = key
                    pivot_row = i
        if pivot_row is None:
            raise RuntimeError("phase-1 objective is bounded; no ratio row means a bug")
        _pivot(tableau, obj, pivot_row, col)
        basis[pivot_row] = col
        pivots += 1

    objective = -obj[-1]
    x = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tableau[i][-1]
    return Phase1Result(objective == 0, tuple(x), objective, pivots)


def _pivot(tableau: list[list[Fraction]], obj: list[Fraction], r: int, c: int) -> None:
    row = tableau[r]
    piv = row[c]
    if piv != 1:
        inv = ONE / piv
        row = [v * inv for v in row]
        tableau[r] = row
    nonzero = [j for j, v in enumerate(row) if v]
    for k, other in enumerate(tableau):
        if k == r:
            continue
        f = other[c]
        if f:
            for j in nonzero:
                other[j] -= f * row[j]
    f = obj[c]
    if f:
        for j in nonzero:
            obj[j] -= f * row[j]
