import random
from fractions import Fraction

import numpy as np
import pytest

from copos.momentmatrix import SymMatrixQ, localizing_matrix, quadratic_form
from copos.measures import MomentSequence
from copos.spectra import (
    EigenConvergenceError,
    SymMatrixF,
    min_eigenvalue,
    psd_projection,
    to_float,
)
from support import det_exact, leading_minors


def random_symmetric(rng, size, span=5.0):
    M = np.array([[rng.uniform(-span, span) for _ in range(size)] for _ in range(size)])
    return (M + M.T) / 2


def test_to_float_identity_keeps_scale_one():
    F = to_float(SymMatrixQ.from_rows([[1, 0], [0, 1]]))
    assert F.scale == 1
    assert np.array_equal(F.entries, np.eye(2))


def test_to_float_normalizes_by_max_entry():
    F = to_float(SymMatrixQ.from_rows([[24, 6], [6, 4]]), normalize=True)
    assert F.scale == 24
    expected = np.array([[1.0, 0.25], [0.25, float(Fraction(4, 24))]])
    assert np.array_equal(F.entries, expected)


def test_to_float_level_one_matrix_at_ones():
    y = MomentSequence.exponential(2, 4)
    M = localizing_matrix(quadratic_form(SymMatrixQ.from_rows([[1, 1], [1, 1]])), y, 1)
    assert M == SymMatrixQ.from_rows([[6, 12, 12], [12, 40, 20], [12, 20, 40]])
    F = to_float(M, normalize=True)
    assert F.scale == 40


def test_to_float_overflow_suggests_normalize():
    big = SymMatrixQ.from_rows([[Fraction(10) ** 400, 0], [0, 1]])
    with pytest.raises(ValueError, match="normalize"):
        to_float(big, normalize=False)
    F = to_float(big, normalize=True)
    assert F.entries[0, 0] == 1.0


def test_symmatrixf_rejects_nonfinite():
    with pytest.raises(ValueError, match="finite"):
        SymMatrixF([[float("nan"), 0.0], [0.0, 1.0]])


def test_min_eigenvalue_diagonal_is_exact():
    res = min_eigenvalue(np.diag([3.0, -1.0, 2.0]))
    assert res.eigenvalues == (-1.0, 2.0, 3.0)
    assert res.iterations == 0
    assert res.off_diagonal_residual == 0.0


def test_min_eigenvalue_2x2():
    res = min_eigenvalue(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert res.eigenvalues[0] == pytest.approx(1.0, abs=1e-12)
    assert res.eigenvalues[1] == pytest.approx(3.0, abs=1e-12)


def test_min_eigenvalue_zero_matrix():
    res = min_eigenvalue(np.zeros((3, 3)))
    assert res.eigenvalues == (0.0, 0.0, 0.0)


def test_level_one_matrix_on_boundary_point_is_positive_definite():
    # (a,b,c) = (1,-1,1) sits on the copositive boundary but strictly inside
    # the level-1 cone: all leading minors of the exact matrix are positive
    y = MomentSequence.exponential(2, 4)
    A = SymMatrixQ.from_rows([[1, -1], [-1, 1]])
    M = localizing_matrix(quadratic_form(A), y, 1)
    minors = leading_minors(M.rows())
    assert all(m > 0 for m in minors)
    res = min_eigenvalue(to_float(M, normalize=True))
    assert all(v > 0 for v in res.eigenvalues)


def test_eigenvalues_sum_to_trace():
    rng = random.Random(31)
    for _ in range(20):
        M = random_symmetric(rng, 5)
        res = min_eigenvalue(M)
        scale = max(1.0, abs(np.trace(M)))
        assert abs(sum(res.eigenvalues) - np.trace(M)) <= 1e-10 * scale


def test_determinism_bit_for_bit():
    rng = random.Random(7)
    M = random_symmetric(rng, 6)
    assert min_eigenvalue(M).eigenvalues == min_eigenvalue(M.copy()).eigenvalues


def test_sign_decision_is_scale_invariant():
    rng = random.Random(13)
    for _ in range(20):
        M = random_symmetric(rng, 4)
        base = min_eigenvalue(M).eigenvalues[0]
        for lam in (2.0, 10.0, 1.0 / 3.0):
            scaled = min_eigenvalue(lam * M).eigenvalues[0]
            assert np.sign(base) == np.sign(scaled)


def test_nonconvergence_raises():
    M = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(EigenConvergenceError):
        min_eigenvalue(M, max_sweeps=0)


def test_min_eigenvalue_rejects_bad_tol():
    with pytest.raises(ValueError):
        min_eigenvalue(np.eye(2), tol=0.0)


def test_psd_projection_fixes_psd_input():
    M = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert np.allclose(psd_projection(M), M, atol=1e-12)


def test_psd_projection_clamps_diagonal():
    out = psd_projection(np.diag([1.0, -2.0]))
    assert np.allclose(out, np.diag([1.0, 0.0]), atol=1e-14)


def test_psd_projection_off_diagonal_case():
    out = psd_projection(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(out, np.full((2, 2), 0.5), atol=1e-12)


def test_psd_projection_is_idempotent():
    rng = random.Random(41)
    for _ in range(10):
        M = random_symmetric(rng, 5)
        once = psd_projection(M)
        twice = psd_projection(once)
        assert np.max(np.abs(twice - once)) <= 1e-11


def test_psd_projection_preserves_wrapper_and_scale():
    F = to_float(SymMatrixQ.from_rows([[24, 6], [6, 4]]), normalize=True)
    out = psd_projection(F)
    assert isinstance(out, SymMatrixF)
    assert out.scale == F.scale
