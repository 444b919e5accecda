"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _echelon(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    m = [[Fraction(x) for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[pivot_row], m[pivot] = m[pivot], m[pivot_row]
        p = m[pivot_row][col]
        m[pivot_row] = [x / p for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return m[:pivot_row]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(_echelon(rows))


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("matrix is not square")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(matrix)]
    red = _echelon(aug)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in red]
