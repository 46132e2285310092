"""Independent ground-truth references for copositivity.

These never touch the spectrahedral test path: the 2x2 case uses the exact
algebraic characterization, and the grid check brute-forces the quadratic form
over rational points of the unit simplex (enough by homogeneity).  The grid
check never answers "yes": positivity on a grid is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .momentmatrix import SymMatrixQ

DEFAULT_GRID_RESOLUTION = 50


@dataclass(frozen=True)
class OracleVerdict:
    copositive: str  # "yes" | "no" | "inconclusive"
    witness: tuple | None  # simplex point with x^T A x < 0, present iff "no"
    method: str
    min_value: Fraction | None = None  # form value at the witness / grid minimum


def _as_symq(A) -> SymMatrixQ:
    return A if isinstance(A, SymMatrixQ) else SymMatrixQ.from_rows(A)


def exact_2x2(A) -> OracleVerdict:
    """Exact 2x2 copositivity: a, c >= 0 and b + sqrt(ac) >= 0.

    The square-root condition is evaluated as b >= 0, or b^2 <= ac, keeping the
    whole test in rational arithmetic so boundary cases cannot be misrounded.
    On "no", the witness minimizes the form on the segment {(t, 1-t)}.
    """
    A = _as_symq(A)
    if A.size != 2:
        raise ValueError(f"exact_2x2 needs a 2x2 matrix, got size {A.size}")
    a, b, c = A.entry(0, 0), A.entry(0, 1), A.entry(1, 1)
    if a < 0:
        return OracleVerdict("no", (Fraction(1), Fraction(0)), "exact-2x2", a)
    if c < 0:
        return OracleVerdict("no", (Fraction(0), Fraction(1)), "exact-2x2", c)
    if b >= 0 or b * b <= a * c:
        return OracleVerdict("yes", None, "exact-2x2")
    # b < 0 and b^2 > ac: the form dips negative inside the segment at
    # t* = (c-b)/(a-2b+c), where it equals (ac-b^2)/(a-2b+c).
    denom = a - 2 * b + c
    t = (c - b) / denom
    return OracleVerdict("no", (t, 1 - t), "exact-2x2", (a * c - b * b) / denom)


def det_c1(a, b, c) -> Fraction:
    """Exact cubic whose sign locates the level-1 exponential-measure boundary."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return (
        3 * a**3
        + 15 * a**2 * b
        + 29 * a**2 * c
        + 16 * a * b**2
        + 50 * a * b * c
        + 29 * a * c**2
        + 4 * b**3
        + 16 * b**2 * c
        + 15 * b * c**2
        + 3 * c**3
    )


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def grid_copositivity(A, resolution: int = DEFAULT_GRID_RESOLUTION) -> OracleVerdict:
    """Evaluate x^T A x at every rational simplex point {alpha/m : |alpha| = m}.

    Any negative value disproves copositivity (with the point as witness); an
    all-nonnegative grid is only "inconclusive".
    """
    A = _as_symq(A)
    if resolution < 1:
        raise ValueError(f"resolution must be at least 1, got {resolution}")
    n = A.size
    m = Fraction(resolution)
    entries = [[A.entry(i, j) for j in range(n)] for i in range(n)]
    minimum = None
    for alpha in _compositions(resolution, n):
        x = [Fraction(a) / m for a in alpha]
        value = Fraction(0)
        for i in range(n):
            if x[i] == 0:
                continue
            value += entries[i][i] * x[i] * x[i]
            for j in range(i + 1, n):
                if x[j]:
                    value += 2 * entries[i][j] * x[i] * x[j]
        if value < 0:
            return OracleVerdict("no", tuple(x), f"grid(m={resolution})", value)
        if minimum is None or value < minimum:
            minimum = value
    return OracleVerdict("inconclusive", None, f"grid(m={resolution})", minimum)
