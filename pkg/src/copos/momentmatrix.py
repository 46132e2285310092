"""Sparse polynomials and exact assembly of moment and localizing matrices.

Assembly is fully rational: the factorial moments of the exponential measure
make floating-point assembly catastrophically ill-conditioned, so floats enter
only in the spectra module.  Entry computation iterates over the sparse
support of the shifting polynomial (n(n+1)/2 terms for a quadratic form), not
over all multi-indices.
"""

from __future__ import annotations

from fractions import Fraction

from .indexing import IndexBasis, MultiIndex, enumerate_basis
from .measures import MomentDegreeError, MomentSequence


def _add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


class Polynomial:
    """Sparse polynomial: multi-index -> nonzero exact rational coefficient."""

    def __init__(self, n: int, coefficients):
        if n < 1:
            raise ValueError(f"dimension must be at least 1, got n={n}")
        self.n = n
        coeffs = {}
        for alpha, c in dict(coefficients).items():
            alpha = tuple(alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for dimension {n}")
            c = Fraction(c)
            if c:
                coeffs[alpha] = c
        self.coefficients = coeffs

    @property
    def degree(self) -> int:
        # zero polynomial reports degree 0
        return max((sum(a) for a in self.coefficients), default=0)

    def evaluate(self, point) -> Fraction:
        point = [Fraction(x) for x in point]
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n}")
        total = Fraction(0)
        for alpha, c in self.coefficients.items():
            term = c
            for x, e in zip(point, alpha):
                term *= x**e
            total += term
        return total

    def square(self) -> "Polynomial":
        """Sparse self-convolution, exact; used for s.o.s. generator expansion."""
        out: dict = {}
        items = list(self.coefficients.items())
        for i, (a, ca) in enumerate(items):
            for b, cb in items[i:]:
                weight = ca * cb if a == b else 2 * ca * cb
                key = _add(a, b)
                c = out.get(key, Fraction(0)) + weight
                if c:
                    out[key] = c
                elif key in out:
                    del out[key]
        return Polynomial(self.n, out)

    def scaled(self, factor) -> "Polynomial":
        factor = Fraction(factor)
        return Polynomial(self.n, {a: factor * c for a, c in self.coefficients.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        merged = dict(self.coefficients)
        for alpha, c in other.coefficients.items():
            merged[alpha] = merged.get(alpha, Fraction(0)) + c
        return Polynomial(self.n, merged)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.coefficients == other.coefficients
        )

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, terms={len(self.coefficients)}, degree={self.degree})"


class SymMatrixQ:
    """Symmetric matrix with exact rational entries; only the upper triangle is stored.

    Optionally carries the IndexBasis labelling its rows so callers can map a
    row back to its monomial for diagnostics.
    """

    def __init__(self, size: int, upper: dict, basis: IndexBasis | None = None):
        if size < 1:
            raise ValueError(f"size must be at least 1, got {size}")
        self.size = size
        self.basis = basis
        self._upper = {}
        for i in range(size):
            for j in range(i, size):
                self._upper[(i, j)] = Fraction(upper.get((i, j), 0))

    @classmethod
    def build(cls, size: int, fn, basis: IndexBasis | None = None) -> "SymMatrixQ":
        upper = {(i, j): fn(i, j) for i in range(size) for j in range(i, size)}
        return cls(size, upper, basis)

    @classmethod
    def from_rows(cls, rows, basis: IndexBasis | None = None) -> "SymMatrixQ":
        rows = [[Fraction(x) for x in row] for row in rows]
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix must be square")
        bad = [
            (i, j)
            for i in range(size)
            for j in range(i + 1, size)
            if rows[i][j] != rows[j][i]
        ]
        if bad:
            raise ValueError(f"matrix is not symmetric at entries {bad}")
        upper = {(i, j): rows[i][j] for i in range(size) for j in range(i, size)}
        return cls(size, upper, basis)

    def entry(self, i: int, j: int) -> Fraction:
        return self._upper[(i, j) if i <= j else (j, i)]

    def rows(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def max_abs(self) -> Fraction:
        return max(abs(v) for v in self._upper.values())

    def scaled(self, factor) -> "SymMatrixQ":
        factor = Fraction(factor)
        return SymMatrixQ(
            self.size, {k: factor * v for k, v in self._upper.items()}, self.basis
        )

    def __add__(self, other: "SymMatrixQ") -> "SymMatrixQ":
        if self.size != other.size:
            raise ValueError("size mismatch")
        upper = {k: v + other._upper[k] for k, v in self._upper.items()}
        return SymMatrixQ(self.size, upper, self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymMatrixQ)
            and self.size == other.size
            and self._upper == other._upper
        )

    def __repr__(self) -> str:
        return f"SymMatrixQ(size={self.size})"


def quadratic_form(A: SymMatrixQ) -> Polynomial:
    """The form x -> x^T A x as a polynomial: a_ii on x_i^2 and 2 a_ij on x_i x_j."""
    n = A.size
    coeffs = {}
    for i in range(n):
        for j in range(i, n):
            alpha = [0] * n
            alpha[i] += 1
            alpha[j] += 1
            coeffs[tuple(alpha)] = A.entry(i, j) if i == j else 2 * A.entry(i, j)
    return Polynomial(n, coeffs)


def moment_matrix(y: MomentSequence, d: int) -> SymMatrixQ:
    """Matrix over the degree-d basis with entry (alpha, beta) = y_{alpha+beta}."""
    if y.max_degree < 2 * d:
        raise MomentDegreeError(2 * d, y.max_degree, f"level-{d} moment matrix")
    basis = enumerate_basis(y.n, d)
    return SymMatrixQ.build(
        len(basis), lambda i, j: y.value(_add(basis[i], basis[j])), basis
    )


def localizing_matrix(f: Polynomial, y: MomentSequence, d: int) -> SymMatrixQ:
    """Matrix with entry (alpha, beta) = sum_gamma f_gamma y_{alpha+beta+gamma}, exact."""
    if f.n != y.n:
        raise ValueError(f"polynomial dimension {f.n} does not match measure dimension {y.n}")
    needed = 2 * d + f.degree
    if y.max_degree < needed:
        raise MomentDegreeError(needed, y.max_degree, f"level-{d} localizing matrix")
    basis = enumerate_basis(y.n, d)
    terms = list(f.coefficients.items())

    def fn(i, j):
        ab = _add(basis[i], basis[j])
        return sum((c * y.value(_add(ab, gamma)) for gamma, c in terms), Fraction(0))

    return SymMatrixQ.build(len(basis), fn, basis)


def shifted_sequence(f: Polynomial, y: MomentSequence) -> MomentSequence:
    """The sequence z = f y with z_alpha = sum_gamma f_gamma y_{alpha+gamma}.

    Its moment matrix at level d equals the localizing matrix of f at level d.
    """
    if f.n != y.n:
        raise ValueError(f"polynomial dimension {f.n} does not match measure dimension {y.n}")
    if y.max_degree < f.degree:
        raise MomentDegreeError(f.degree, y.max_degree, "shifted sequence")
    new_degree = y.max_degree - f.degree
    terms = list(f.coefficients.items())
    values = {}
    for alpha in enumerate_basis(y.n, new_degree):
        values[alpha] = sum((c * y.value(_add(alpha, gamma)) for gamma, c in terms), Fraction(0))
    return MomentSequence(y.n, new_degree, values, f"shifted({y.descriptor})")
