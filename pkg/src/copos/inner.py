"""Inner approximations of the completely positive cone.

Level-d members are the matrices of second-order moments of measures whose
density against the reference measure is a sum of squares of degree-d
polynomials.  Rank-one densities g^2 give explicit generators (exact rational
arithmetic end to end); general members come from a PSD matrix X paired with
the localizing matrices of the monomials x_i x_j.

Membership testing is certificate-producing only: alternating projections
between the PSD cone and the affine constraint set either deliver an X that is
independently re-verified, or give up with "undetermined".  The method cannot
refute membership in a closed cone, so it never claims non-membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .indexing import basis_size, enumerate_basis
from .measures import MomentDegreeError, MomentSequence
from .momentmatrix import Polynomial, SymMatrixQ, localizing_matrix
from .spectra import SymMatrixF, min_eigenvalue, psd_projection, to_float

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 5000
# Relaxation of the reflection step; any value in (0, 2) keeps the iteration
# averaged, and 1.9 roughly halves the iteration count on boundary instances.
RELAXATION = 1.9


def _monomial(n: int, i: int, j: int) -> Polynomial:
    alpha = [0] * n
    alpha[i] += 1
    alpha[j] += 1
    return Polynomial(n, {tuple(alpha): 1})


def pairing_matrices(y: MomentSequence, d: int) -> dict[tuple[int, int], SymMatrixQ]:
    """The localizing matrices of x_i x_j for i <= j, exact, keyed by (i, j)."""
    needed = 2 * d + 2
    if y.max_degree < needed:
        raise MomentDegreeError(needed, y.max_degree, f"level-{d} pairing matrices")
    n = y.n
    return {
        (i, j): localizing_matrix(_monomial(n, i, j), y, d)
        for i in range(n)
        for j in range(i, n)
    }


def generator_from_poly(g: Polynomial, y: MomentSequence, d: int) -> SymMatrixQ:
    """The n x n matrix with entries L_y(g^2 x_i x_j), exact.

    These rank-one-density generators span the level-d inner cone; g is squared
    by sparse convolution, so no floating point enters.
    """
    if g.n != y.n:
        raise ValueError(f"polynomial dimension {g.n} does not match measure dimension {y.n}")
    if g.degree > d:
        raise ValueError(f"generator polynomial has degree {g.degree}, level allows {d}")
    needed = 2 * d + 2
    if y.max_degree < needed:
        raise MomentDegreeError(needed, y.max_degree, f"level-{d} generator")
    n = y.n
    g2 = g.square()

    def entry(i, j):
        total = Fraction(0)
        for alpha, c in g2.coefficients.items():
            shifted = list(alpha)
            shifted[i] += 1
            shifted[j] += 1
            total += c * y.value(tuple(shifted))
        return total

    return SymMatrixQ.build(n, entry)


def generator_from_psd(
    X, y: MomentSequence, d: int, psd_tol: float = DEFAULT_TOL
) -> SymMatrixF:
    """The n x n matrix with entries <X, M_d(x_i x_j y)> for a PSD matrix X.

    X is validated to be PSD within psd_tol (relative to its largest entry)
    and is mirrored from its upper triangle; the expansion runs in floats.
    """
    X = X.entries if isinstance(X, SymMatrixF) else np.asarray(X, dtype=float)
    s = basis_size(y.n, d)
    if X.shape != (s, s):
        raise ValueError(f"X must be {s}x{s} for n={y.n}, d={d}, got {X.shape}")
    X = np.triu(X) + np.triu(X, 1).T
    peak = float(np.max(np.abs(X)))
    if peak > 0:
        smallest = min_eigenvalue(X / peak).eigenvalues[0]
        if smallest < -psd_tol:
            raise ValueError(
                f"X is not positive semidefinite within tolerance "
                f"(normalized min eigenvalue {smallest:.3e} < -{psd_tol:.1e})"
            )
    mats = pairing_matrices(y, d)
    n = y.n
    G = np.zeros((n, n))
    for (i, j), M in mats.items():
        G[i, j] = G[j, i] = float(np.sum(X * to_float(M, normalize=False).entries))
    return SymMatrixF(G)


def pairing(A: SymMatrixQ, G: SymMatrixQ) -> Fraction:
    """Trace inner product trace(A G) of two exact symmetric matrices."""
    if A.size != G.size:
        raise ValueError(f"size mismatch: {A.size} vs {G.size}")
    total = Fraction(0)
    for i in range(A.size):
        for j in range(A.size):
            total += A.entry(i, j) * G.entry(i, j)
    return total


@dataclass(frozen=True)
class DualResult:
    status: str  # "member" | "undetermined"
    certificate: np.ndarray | None  # affine-exact, PSD within tol
    residual: float  # Frobenius distance of the certificate to the PSD cone
    iterations: int
    level: int
    measure: str

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def _as_target(A, n: int) -> np.ndarray:
    if isinstance(A, SymMatrixQ):
        arr = to_float(A, normalize=False).entries
    elif isinstance(A, SymMatrixF):
        arr = A.entries
    else:
        arr = np.asarray(A, dtype=float)
    if arr.shape != (n, n):
        raise ValueError(f"target matrix must be {n}x{n}, got {arr.shape}")
    return np.triu(arr) + np.triu(arr, 1).T


def dual_membership(
    A,
    d: int,
    y: MomentSequence,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> DualResult:
    """Search for X >= 0 with <X, M_d(x_i x_j y)> = a_ij by alternating projections.

    The two projections are the PSD projection (spectra module) and the
    least-squares projection onto the affine constraint set (normal equations
    of the n(n+1)/2 constraints, factored once and reused).  They are combined
    in the averaged-alternating-reflections (Douglas-Rachford) form: plain
    sequential projection converges only sublinearly on the rank-deficient
    boundary instances this cone is full of, while the reflected form stays
    linear in practice.

    On success the certificate X satisfies the constraints to machine
    precision and is PSD within tol (its Frobenius distance to the cone is at
    most the reported residual); its re-expansion through generator_from_psd
    is verified against A before "member" is reported.  Hitting max_iter means
    "undetermined": the method cannot prove that no certificate exists.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    n = y.n
    target = _as_target(A, n)
    mats = pairing_matrices(y, d)
    pairs = sorted(mats)
    basis_mats = [to_float(mats[p], normalize=False).entries for p in pairs]
    b = np.array([target[i, j] for (i, j) in pairs])

    # pinv: the constraints can be linearly dependent (e.g. the three 1x1
    # pairing matrices at d=0); the residual check at convergence catches
    # inconsistent right-hand sides.
    gram = np.array([[np.sum(P * Q) for Q in basis_mats] for P in basis_mats])
    gram_inv = np.linalg.pinv(gram)

    def project_affine(X: np.ndarray) -> np.ndarray:
        residual = np.array([np.sum(X * P) for P in basis_mats]) - b
        coeffs = gram_inv @ residual
        out = X - sum(c * P for c, P in zip(coeffs, basis_mats))
        return np.triu(out) + np.triu(out, 1).T

    s = basis_size(n, d)
    Z = np.zeros((s, s))
    gap = float("inf")
    for iteration in range(1, max_iter + 1):
        X = project_affine(Z)
        Y = psd_projection(2.0 * X - Z)
        gap = float(np.linalg.norm(Y - X))
        # dist(X, PSD) <= ||Y - X|| since Y is itself PSD
        if gap <= tol:
            constraint_residual = float(
                np.linalg.norm(np.array([np.sum(X * P) for P in basis_mats]) - b)
            )
            if constraint_residual <= tol and _reexpansion_matches(X, target, y, d, tol):
                return DualResult("member", X, gap, iteration, d, y.descriptor)
            return DualResult("undetermined", None, gap, iteration, d, y.descriptor)
        Z = Z + RELAXATION * (Y - X)
    return DualResult("undetermined", None, gap, max_iter, d, y.descriptor)


def _reexpansion_matches(X, target, y, d, tol) -> bool:
    expanded = generator_from_psd(X, y, d, psd_tol=max(10 * tol, 1e-7)).entries
    return bool(np.max(np.abs(expanded - target)) <= 10 * tol * max(1.0, np.max(np.abs(target))))
