"""Dense exact linear algebra over the rationals.

Two independent rank routines are provided on purpose: rank_gauss works
over Fractions with ordinary pivoting, rank_bareiss is fraction-free over
integers.  Agreement between them is used as a cross-check by callers.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import ResourceCapError

MAX_ROWS = 10**4
MAX_COLS = 10**4

Row = Sequence[int | Fraction]


def _guard(rows: int, cols: int) -> None:
    if rows > MAX_ROWS or cols > MAX_COLS:
        raise ResourceCapError(
            f"dense matrix {rows}x{cols} exceeds the {MAX_ROWS}x{MAX_COLS} cap"
        )


def rank_gauss(matrix: Sequence[Row]) -> int:
    """Rank via Gaussian elimination over Fractions."""
    if not matrix:
        return 0
    rows = [[Fraction(x) for x in row] for row in matrix]
    n_rows, n_cols = len(rows), len(rows[0])
    _guard(n_rows, n_cols)
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, n_rows):
            f = rows[r][col]
            if f:
                ratio = f / pv
                row_r, row_p = rows[r], rows[rank]
                for c in range(col, n_cols):
                    row_r[c] -= ratio * row_p[c]
        rank += 1
        if rank == n_rows:
            break
    return rank


def _integer_rows(matrix: Sequence[Row]) -> list[list[int]]:
    out = []
    for row in matrix:
        scale = 1
        for x in row:
            if isinstance(x, Fraction):
                scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) if isinstance(x, Fraction) else int(x) * scale for x in row])
    return out


def rank_fraction_free(matrix: Sequence[Row]) -> int:
    """Rank via integer cross-multiplication elimination.

    Rows are rescaled to clear denominators; eliminations use
    row <- pv*row - f*pivot_row followed by a gcd reduction, so no division
    ever happens and every step is exact.
    """
    if not matrix:
        return 0
    rows = _integer_rows(matrix)
    n_rows, n_cols = len(rows), len(rows[0])
    _guard(n_rows, n_cols)
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, n_rows):
            f = rows[r][col]
            if f == 0:
                continue
            row_r, row_p = rows[r], rows[rank]
            g = 0
            for c in range(col, n_cols):
                row_r[c] = row_r[c] * pv - f * row_p[c]
                g = gcd(g, row_r[c])
            if g > 1:
                for c in range(col, n_cols):
                    row_r[c] //= g
        rank += 1
        if rank == n_rows:
            break
    return rank


def rref(matrix: Sequence[Row]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices, over Fractions."""
    if not matrix:
        return [], []
    rows = [[Fraction(x) for x in row] for row in matrix]
    n_rows, n_cols = len(rows), len(rows[0])
    _guard(n_rows, n_cols)
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for r in range(n_rows):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == n_rows:
            break
    return rows, pivots


def nullspace(matrix: Sequence[Row]) -> list[list[Fraction]]:
    """Canonical nullspace basis (one vector per free column, in order)."""
    if not matrix:
        return []
    n_cols = len(matrix[0])
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n_cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def solve(matrix: Sequence[Row], rhs: Sequence[int | Fraction]) -> Optional[list[Fraction]]:
    """One exact solution of A x = b, or None if inconsistent."""
    if not matrix:
        return [] if all(Fraction(x) == 0 for x in rhs) else None
    n_cols = len(matrix[0])
    augmented = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    reduced, pivots = rref(augmented)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][n_cols]
    return x
