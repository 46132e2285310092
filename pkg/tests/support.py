"""Shared oracle helpers for the test suite (kept independent of the library paths)."""

from fractions import Fraction


def det_exact(rows):
    """Determinant by cofactor expansion over exact rationals; fine for size <= 5."""
    rows = [[Fraction(x) for x in row] for row in rows]
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(size):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_exact(minor)
    return total


def leading_minors(rows):
    """All leading principal minors, exact."""
    return [det_exact([row[: k + 1] for row in rows[: k + 1]]) for k in range(len(rows))]


def poly_multiply(p, q):
    """Sparse convolution of two {multi-index: Fraction} maps (test-side oracle)."""
    out = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            c = out.get(key, Fraction(0)) + Fraction(ca) * Fraction(cb)
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out
