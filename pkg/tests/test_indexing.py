from itertools import product

import pytest

from copos.indexing import basis_size, enumerate_basis


def brute_force_count(n, d):
    return sum(1 for alpha in product(range(d + 1), repeat=n) if sum(alpha) <= d)


def test_basis_size_values():
    assert basis_size(2, 1) == 3
    assert basis_size(4, 3) == 35
    assert basis_size(4, 3) == brute_force_count(4, 3)
    for n in (1, 2, 5, 9):
        assert basis_size(n, 0) == 1


def test_basis_size_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        basis_size(0, 2)
    with pytest.raises(ValueError):
        basis_size(3, -1)
    with pytest.raises(ValueError):
        enumerate_basis(0, 1)


def test_enumerate_univariate():
    assert list(enumerate_basis(1, 2)) == [(0,), (1,), (2,)]


def test_enumerate_graded_lex_order():
    assert list(enumerate_basis(2, 1)) == [(0, 0), (1, 0), (0, 1)]
    assert list(enumerate_basis(2, 2)) == [
        (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2),
    ]


def test_enumerate_count_n3_d2():
    basis = enumerate_basis(3, 2)
    assert len(basis) == 10
    assert len(basis) == brute_force_count(3, 2)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(5))
def test_basis_is_consistent(n, d):
    basis = enumerate_basis(n, d)
    assert len(basis) == basis_size(n, d)
    assert len(set(basis)) == len(basis)
    for i, alpha in enumerate(basis):
        assert len(alpha) == n
        assert all(e >= 0 for e in alpha)
        assert sum(alpha) <= d
        assert basis.position(alpha) == i
        assert basis[i] == alpha


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(4))
def test_basis_is_prefix_of_next_degree(n, d):
    shorter = enumerate_basis(n, d)
    longer = enumerate_basis(n, d + 1)
    assert longer.exponents[: len(shorter)] == shorter.exponents


def test_position_rejects_unknown_index():
    basis = enumerate_basis(2, 1)
    with pytest.raises(KeyError):
        basis.position((2, 0))
