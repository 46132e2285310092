"""Small exact-rational linear algebra helpers shared across modules."""

from __future__ import annotations

from fractions import Fraction


def det_rational(rows) -> Fraction:
    """Determinant of a square matrix with Fraction-able entries, exactly.

    Plain Gaussian elimination over the rationals; fine at the sizes this
    package meets (cone bases and simplex edge matrices, n <= ~10).
    """
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        pivot = a[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] / pivot
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det
