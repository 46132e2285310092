"""Floating-point spectra of exact symmetric matrices, via cyclic Jacobi sweeps.

Conversion normalizes by the largest absolute entry by default: positive
scaling preserves semidefiniteness, and the factorial-sized entries of
exponential-measure matrices would otherwise destroy additive accuracy.  The
eigensolver runs fixed-order cyclic Jacobi rotations until the off-diagonal
Frobenius norm drops below tol times the Frobenius norm of the input, so
results are reproducible bit for bit on a given platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .momentmatrix import SymMatrixQ

DEFAULT_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 100


class EigenConvergenceError(RuntimeError):
    """The Jacobi iteration did not reach the requested off-diagonal residual."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"eigensolver did not converge: off-diagonal residual {residual:.3e} "
            f"after {sweeps} sweeps"
        )
        self.residual = residual
        self.sweeps = sweeps


@dataclass(frozen=True)
class SpectralResult:
    eigenvalues: tuple[float, ...]  # sorted ascending
    off_diagonal_residual: float  # relative to the Frobenius norm of the input
    iterations: int  # full cyclic sweeps

    @property
    def min(self) -> float:
        return self.eigenvalues[0]


class SymMatrixF:
    """Symmetric float matrix plus the scale it was divided by during conversion.

    Entries are mirrored from the upper triangle, so symmetry is exact; NaN or
    infinite entries are rejected.
    """

    def __init__(self, entries, scale=1):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        arr = np.triu(arr) + np.triu(arr, 1).T
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        self.entries = arr
        self.scale = Fraction(scale)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __repr__(self) -> str:
        return f"SymMatrixF(size={self.size}, scale={self.scale})"


def to_float(M: SymMatrixQ, normalize: bool = True) -> SymMatrixF:
    """Convert an exact matrix to floats, dividing by the max absolute entry if asked."""
    qmax = M.max_abs()
    scale = qmax if (normalize and qmax != 0) else Fraction(1)
    rows = []
    for i in range(M.size):
        row = []
        for j in range(M.size):
            try:
                row.append(float(M.entry(i, j) / scale))
            except OverflowError:
                raise ValueError(
                    f"entry ({i},{j}) exceeds the floating-point range; "
                    "convert with normalize=True"
                ) from None
        rows.append(row)
    return SymMatrixF(rows, scale)


def _as_array(M) -> np.ndarray:
    if isinstance(M, SymMatrixF):
        return M.entries
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _off_norm(a: list, n: int) -> float:
    total = 0.0
    for p in range(n - 1):
        row = a[p]
        for q in range(p + 1, n):
            total += row[q] * row[q]
    return math.sqrt(2.0 * total)


def _cyclic_jacobi(arr: np.ndarray, tol: float, max_sweeps: int, want_vectors: bool):
    """Diagonalize a symmetric matrix in place with fixed-order Jacobi rotations.

    Returns (eigenvalues ascending, vectors-or-None with matching columns,
    relative off-diagonal residual, sweeps used).  Deterministic: the sweep
    order is row-major over the upper triangle.
    """
    n = arr.shape[0]
    a = [[float(x) for x in row] for row in arr]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)] if want_vectors else None

    frob = math.sqrt(sum(x * x for row in a for x in row))
    if frob == 0.0 or n == 1:
        order = sorted(range(n), key=lambda i: a[i][i])
        vals = tuple(a[i][i] for i in order)
        vecs = [[v[i][j] for j in order] for i in range(n)] if want_vectors else None
        return vals, vecs, 0.0, 0

    target = tol * frob
    negligible = target * 1e-3 / n  # zeroing these cannot push the residual past target
    sweeps = 0
    off = _off_norm(a, n)
    while off > target:
        if sweeps >= max_sweeps:
            raise EigenConvergenceError(off / frob, sweeps)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                if abs(apq) < negligible:
                    a[p][q] = a[q][p] = 0.0
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p][k]
                    aqk = a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                a[p][q] = a[q][p] = 0.0
                if want_vectors:
                    for k in range(n):
                        vkp = v[k][p]
                        vkq = v[k][q]
                        v[k][p] = c * vkp - s * vkq
                        v[k][q] = s * vkp + c * vkq
        sweeps += 1
        off = _off_norm(a, n)

    order = sorted(range(n), key=lambda i: a[i][i])
    vals = tuple(a[i][i] for i in order)
    vecs = [[v[i][j] for j in order] for i in range(n)] if want_vectors else None
    return vals, vecs, off / frob, sweeps


def min_eigenvalue(M, tol: float = DEFAULT_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS) -> SpectralResult:
    """Full spectrum of a symmetric float matrix; .eigenvalues[0] is the smallest."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    vals, _, residual, sweeps = _cyclic_jacobi(_as_array(M), tol, max_sweeps, False)
    return SpectralResult(vals, residual, sweeps)


def psd_projection(M, tol: float = DEFAULT_TOL, max_sweeps: int = DEFAULT_MAX_SWEEPS):
    """Nearest (Frobenius) positive semidefinite matrix: clamp negative eigenvalues.

    Returns the same type it was given: SymMatrixF (scale preserved) or ndarray.
    """
    arr = _as_array(M)
    vals, vecs, _, _ = _cyclic_jacobi(arr, tol, max_sweeps, True)
    w = np.array([max(x, 0.0) for x in vals])
    V = np.array(vecs)
    R = (V * w) @ V.T
    R = np.triu(R) + np.triu(R, 1).T
    if isinstance(M, SymMatrixF):
        return SymMatrixF(R, M.scale)
    return R
