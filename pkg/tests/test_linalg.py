import random
from fractions import Fraction

import pytest

from dehnq import ResourceCapError
from dehnq.linalg import nullspace, rank_fraction_free, rank_gauss, rref, solve


def _random_matrix(rng, rows, cols, lo=-4, hi=4):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_rank_small_known():
    assert rank_gauss([[1, 2], [2, 4]]) == 1
    assert rank_gauss([[1, 0], [0, 1]]) == 2
    assert rank_gauss([[0, 0], [0, 0]]) == 0
    assert rank_fraction_free([[1, 2], [2, 4]]) == 1


def test_rank_routines_agree_random():
    rng = random.Random(0)
    for _ in range(100):
        m = _random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        assert rank_gauss(m) == rank_fraction_free(m)


def test_rank_with_fractions():
    singular = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1, 1)]]
    assert rank_gauss(singular) == rank_fraction_free(singular) == 1
    regular = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 1)]]
    assert rank_gauss(regular) == rank_fraction_free(regular) == 2


def test_rank_of_rank_one_product():
    rng = random.Random(1)
    for _ in range(30):
        u = [rng.randint(-3, 3) for _ in range(6)]
        v = [rng.randint(-3, 3) for _ in range(5)]
        m = [[a * b for b in v] for a in u]
        expected = 1 if any(u) and any(v) else 0
        assert rank_gauss(m) == expected
        assert rank_fraction_free(m) == expected


def test_rref_pivots_are_unit_columns():
    m = [[2, 4, 1], [1, 2, 0], [0, 0, 3]]
    reduced, pivots = rref(m)
    for r, c in enumerate(pivots):
        col = [reduced[i][c] for i in range(len(reduced))]
        assert col[r] == 1 and all(col[i] == 0 for i in range(len(col)) if i != r)


def test_nullspace_annihilates():
    rng = random.Random(2)
    for _ in range(50):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        basis = nullspace(m)
        cols = len(m[0])
        assert len(basis) == cols - rank_gauss(m)
        for vec in basis:
            for row in m:
                assert sum(Fraction(a) * b for a, b in zip(row, vec)) == 0


def test_solve_consistent_and_inconsistent():
    m = [[1, 2], [3, 4]]
    x = solve(m, [5, 6])
    assert x is not None
    assert [sum(Fraction(a) * b for a, b in zip(row, x)) for row in m] == [5, 6]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_solve_underdetermined():
    m = [[1, 1, 1]]
    x = solve(m, [3])
    assert x is not None and sum(x) == 3


def test_size_guard():
    with pytest.raises(ResourceCapError):
        rank_gauss([[0] * 10_001])
