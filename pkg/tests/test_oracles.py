import random
from fractions import Fraction

import pytest

from copos.measures import MomentSequence
from copos.momentmatrix import SymMatrixQ, localizing_matrix, quadratic_form
from copos.oracles import det_c1, exact_2x2, grid_copositivity
from support import det_exact


def two_by_two(a, b, c):
    return SymMatrixQ.from_rows([[a, b], [b, c]])


def test_exact_2x2_boundary_is_copositive():
    assert exact_2x2(two_by_two(1, -1, 1)).copositive == "yes"


def test_exact_2x2_negative_dip_has_witness():
    verdict = exact_2x2(two_by_two(1, Fraction(-3, 2), 1))
    assert verdict.copositive == "no"
    assert verdict.witness == (Fraction(1, 2), Fraction(1, 2))
    assert verdict.min_value == Fraction(-1, 4)


def test_exact_2x2_zero_matrix():
    assert exact_2x2(two_by_two(0, 0, 0)).copositive == "yes"


def test_exact_2x2_negative_diagonal():
    v = exact_2x2(two_by_two(-1, 0, 1))
    assert v.copositive == "no"
    assert v.witness == (1, 0)
    v = exact_2x2(two_by_two(1, 0, Fraction(-1, 7)))
    assert v.copositive == "no"
    assert v.witness == (0, 1)


def test_exact_2x2_witness_is_valid():
    rng = random.Random(19)
    for _ in range(300):
        a, b, c = (Fraction(rng.randint(-2000, 2000), 1000) for _ in range(3))
        verdict = exact_2x2(two_by_two(a, b, c))
        if verdict.copositive == "no":
            t, u = verdict.witness
            assert t >= 0 and u >= 0 and t + u == 1
            value = a * t * t + 2 * b * t * u + c * u * u
            assert value < 0
            assert value == verdict.min_value


def test_det_c1_coefficients():
    assert det_c1(1, 0, 0) == 3
    assert det_c1(0, 1, 0) == 4
    assert det_c1(0, 0, 1) == 3
    assert det_c1(1, 1, 1) == 180


def test_det_c1_factored_slice():
    # along a = c = 1 the cubic collapses to 4 (b+2)^2 (b+4)
    rng = random.Random(2)
    for _ in range(20):
        b = Fraction(rng.randint(-500, 500), 100)
        assert det_c1(1, b, 1) == 4 * (b + 2) ** 2 * (b + 4)


def test_det_c1_matches_level_one_determinant():
    # det of the exact level-1 exponential matrix is 8x the cubic
    rng = random.Random(29)
    y = MomentSequence.exponential(2, 4)
    for _ in range(10):
        a, b, c = (Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(3))
        M = localizing_matrix(quadratic_form(two_by_two(a, b, c)), y, 1)
        assert det_exact(M.rows()) == 8 * det_c1(a, b, c)


def test_grid_never_says_yes():
    verdict = grid_copositivity(two_by_two(1, 0, 1), resolution=8)
    assert verdict.copositive == "inconclusive"
    assert verdict.min_value > 0
    assert verdict.witness is None


def test_grid_finds_midpoint_witness():
    verdict = grid_copositivity(two_by_two(1, Fraction(-3, 2), 1), resolution=2)
    assert verdict.copositive == "no"
    assert verdict.witness == (Fraction(1, 2), Fraction(1, 2))
    assert verdict.min_value == Fraction(-1, 4)


def test_grid_resolution_one_misses_interior():
    A = two_by_two(0, -1, 0)
    assert grid_copositivity(A, resolution=1).copositive == "inconclusive"
    fine = grid_copositivity(A, resolution=2)
    assert fine.copositive == "no"
    assert fine.min_value == Fraction(-1, 2)


def test_grid_rejects_bad_resolution():
    with pytest.raises(ValueError):
        grid_copositivity(two_by_two(1, 0, 1), resolution=0)


def test_grid_no_implies_exact_no():
    rng = random.Random(37)
    for _ in range(200):
        a, b, c = (Fraction(rng.randint(-2000, 2000), 1000) for _ in range(3))
        A = two_by_two(a, b, c)
        if grid_copositivity(A, resolution=50).copositive == "no":
            assert exact_2x2(A).copositive == "no"


def test_grid_three_dimensional():
    A = SymMatrixQ.from_rows([[1, -1, 0], [-1, 1, -1], [0, -1, 1]])
    verdict = grid_copositivity(A, resolution=6)
    assert verdict.copositive == "no"
    x = verdict.witness
    value = sum(
        A.entry(i, j) * x[i] * x[j] for i in range(3) for j in range(3)
    )
    assert value == verdict.min_value < 0
