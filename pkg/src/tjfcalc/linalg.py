"""Exact linear algebra over Q with Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]


def rref(matrix: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; pivots are searched in the first ``ncols`` columns."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    width = len(rows[0]) if rows else 0
    ncols = width if ncols is None else ncols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """A solution of M x = rhs (free variables set to 0), or None if inconsistent."""
    if not matrix:
        return None if any(rhs) else []
    n = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, n)
    for row in rows[len(pivots):]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x
