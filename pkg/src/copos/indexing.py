"""Graded-lex enumeration of the monomial multi-indices that label matrix rows."""

from __future__ import annotations

import math
from itertools import combinations_with_replacement

# Exponent vector of a monomial, e.g. (2, 0, 1) for x1^2 * x3.
MultiIndex = tuple[int, ...]


def basis_size(n: int, d: int) -> int:
    """Number of monomials of total degree <= d in n variables, C(n+d, d).

    Computed with exact integer arithmetic; Python integers are unbounded,
    so the count is exact for any n, d.
    """
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got n={n}")
    if d < 0:
        raise ValueError(f"degree bound must be nonnegative, got d={d}")
    return math.comb(n + d, d)


class IndexBasis:
    """All multi-indices |alpha| <= d in n variables, in graded lex order.

    Lower total degree comes first; within a degree, higher powers of x1
    come first, so for n=2 the order starts 1, x1, x2, x1^2, x1*x2, x2^2.
    The ordering is prefix-stable in d: the basis for degree d is the first
    basis_size(n, d) entries of the basis for d+1, which makes every level-d
    moment matrix a leading principal submatrix of the level-(d+1) one.
    """

    def __init__(self, n: int, d: int, exponents: tuple[MultiIndex, ...]):
        self.n = n
        self.d = d
        self.exponents = exponents
        self._position = {alpha: i for i, alpha in enumerate(exponents)}

    def position(self, alpha: MultiIndex) -> int:
        """Ordinal of alpha in the basis; inverse of indexing."""
        try:
            return self._position[tuple(alpha)]
        except KeyError:
            raise KeyError(f"{tuple(alpha)} is not in the degree-{self.d} basis") from None

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, i: int) -> MultiIndex:
        return self.exponents[i]

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self._position

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndexBasis)
            and (self.n, self.d, self.exponents) == (other.n, other.d, other.exponents)
        )

    def __repr__(self) -> str:
        return f"IndexBasis(n={self.n}, d={self.d}, size={len(self)})"


def enumerate_basis(n: int, d: int) -> IndexBasis:
    """Enumerate all alpha with |alpha| <= d in graded lex order."""
    size = basis_size(n, d)  # validates n, d
    exponents = []
    for deg in range(d + 1):
        for combo in combinations_with_replacement(range(n), deg):
            alpha = [0] * n
            for var in combo:
                alpha[var] += 1
            exponents.append(tuple(alpha))
    assert len(exponents) == size
    return IndexBasis(n, d, tuple(exponents))
