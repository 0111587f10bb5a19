"""Dense exact-rational simplex, enough for the piercing LPs.

Maximize c·y subject to Ay ≤ b, y ≥ 0 with b ≥ 0, so the slack basis
is feasible and no first phase is needed.  Bland's rule (least-index
entering column, least-index basic leaving variable on ratio ties)
guarantees termination without cycling.  Dual values are read off the
slack columns of the final objective row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class SimplexOutcome:
    value: Fraction
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]


def simplex_maximize(
    c: Sequence[Fraction],
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
) -> SimplexOutcome:
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    if any(v < 0 for v in b):
        raise ValueError("this solver needs b ≥ 0")

    zero, one = Fraction(0), Fraction(1)
    # columns: n structural + m slack; last entry of each row is the rhs
    rows = [
        [Fraction(x) for x in A[i]]
        + [one if j == i else zero for j in range(m)]
        + [Fraction(b[i])]
        for i in range(m)
    ]
    # reduced costs z_j − c_j; optimal for a max problem when all ≥ 0
    obj = [-Fraction(x) for x in c] + [zero] * m + [zero]
    basis = list(range(n, n + m))

    while True:
        entering = next((j for j in range(n + m) if obj[j] < 0), None)
        if entering is None:
            break
        pivot_row = None
        best_ratio = None
        for i in range(m):
            coeff = rows[i][entering]
            if coeff > 0:
                ratio = rows[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[pivot_row])
                ):
                    best_ratio = ratio
                    pivot_row = i
        if pivot_row is None:
            raise ValueError("LP is unbounded")
        pivot = rows[pivot_row][entering]
        rows[pivot_row] = [x / pivot for x in rows[pivot_row]]
        for i in range(m):
            if i != pivot_row and rows[i][entering] != 0:
                factor = rows[i][entering]
                rows[i] = [
                    x - factor * y for x, y in zip(rows[i], rows[pivot_row])
                ]
        if obj[entering] != 0:
            factor = obj[entering]
            obj = [x - factor * y for x, y in zip(obj, rows[pivot_row])]
        basis[pivot_row] = entering

    primal = [zero] * n
    for i, var in enumerate(basis):
        if var < n:
            primal[var] = rows[i][-1]
    dual = tuple(obj[n + i] for i in range(m))
    value = sum((ci * yi for ci, yi in zip(c, primal)), zero)
    return SimplexOutcome(value, tuple(primal), dual)
