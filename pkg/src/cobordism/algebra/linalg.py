"""Exact Gaussian elimination over the rationals.

Kept in-house so the library never imports a CAS at startup; matrices here
are at most a few dozen rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_reduce(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    augmented = [list(row) + [Fraction(int(i == j)) for j in range(n)]
                 for i, row in enumerate(rows)]
    reduced, pivots = row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in reduced]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Unique solution of ``A x = b``; raises if ``A`` is singular or inconsistent."""
    n = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(augmented)
    if n in pivots:
        raise ValueError("linear system is inconsistent")
    if len(pivots) < n:
        raise ValueError("linear system is underdetermined")
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = reduced[i][n]
    return x
