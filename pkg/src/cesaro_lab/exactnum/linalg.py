"""Small exact linear algebra: determinants, principal minors, triangular solves.

Entries may be any commutative-ring values supporting ``+ - *`` (Fractions,
UniPoly, MultiPoly).  Matrices are sequences of row sequences.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

Matrix = Sequence[Sequence]


def det(m: Matrix):
    """Determinant by Laplace expansion along rows, memoized on column subsets.

    Costs O(n 2^n) ring operations and never divides, so it works over
    polynomial rings.  Fraction matrices use fraction-free elimination instead.
    """
    n = len(m)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, (int, Fraction)) for row in m for x in row):
        return _det_fraction(m)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: Tuple[int, ...]):
        if row == n:
            return 1
        total = None
        for pos, c in enumerate(cols):
            entry = m[row][c]
            term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total

    return minor(0, tuple(range(n)))


def _det_fraction(m: Matrix) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    out = Fraction(sign)
    for k in range(n):
        out *= a[k][k]
    return out


def submatrix(m: Matrix, idx: Sequence[int]) -> List[List]:
    return [[m[r][c] for c in idx] for r in idx]


def principal_minors(m: Matrix) -> Dict[Tuple[int, ...], object]:
    """All 2^n - 1 principal minors keyed by their (sorted) index tuple."""
    n = len(m)
    return {idx: det(submatrix(m, idx)) for size in range(1, n + 1) for idx in combinations(range(n), size)}


def leading_principal_minors(m: Matrix) -> List:
    return [det(submatrix(m, range(size))) for size in range(1, len(m) + 1)]


def solve_lower(lower: Matrix, rhs: Matrix) -> List[List[Fraction]]:
    """Solve ``L X = B`` by forward substitution; ``L`` lower triangular, invertible."""
    n = len(lower)
    cols = len(rhs[0])
    x: List[List[Fraction]] = [[Fraction(0)] * cols for _ in range(n)]
    for r in range(n):
        diag = lower[r][r]
        if diag == 0:
            raise ZeroDivisionError(f"singular triangular matrix at row {r}")
        for c in range(cols):
            acc = Fraction(rhs[r][c])
            for k in range(r):
                if lower[r][k]:
                    acc -= lower[r][k] * x[k][c]
            x[r][c] = acc / diag
    return x


def transpose(m: Matrix) -> List[List]:
    return [list(col) for col in zip(*m)]
