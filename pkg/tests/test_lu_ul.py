from fractions import Fraction

import pytest

from conftest import lu_formula_mismatches, ul_formula_mismatches
from iwasawa.errors import SingularMatrix, ZeroPivot
from iwasawa.lu_ul import (
    find_anti_leading_permutation,
    find_leading_permutation,
    lu_decompose,
    strong_ul_decompose,
)
from iwasawa.matrix import RatMatrix, SignedPermutation, minor, rotate
from iwasawa.sampling import random_nonsingular, random_sl

I = RatMatrix.identity


def test_identity_cases():
    res = lu_decompose(I(3))
    assert res.L == res.D == res.U == res.P.matrix() == I(3)
    ul = strong_ul_decompose(I(3), 3)
    assert ul.V == ul.Delta == ul.Lambda == ul.Pi.matrix() == I(3)
    assert find_anti_leading_permutation(I(4), 4) == SignedPermutation.identity(4)


def test_lu_diagonal_example():
    res = lu_decompose(RatMatrix([[2, 0], [0, Fraction(1, 2)]]))
    assert res.D == RatMatrix.diag([2, Fraction(1, 2)])
    assert res.L == res.U == I(2)
    assert res.ys == (2, 1)


def test_anti_leading_permutation_swap():
    P = find_anti_leading_permutation(RatMatrix([[0, 1], [1, 0]]), 1)
    assert P.mapping == (2, 1) and P.negate_first


def test_strong_ul_two_by_two_example():
    M = RatMatrix([[1, 0], [Fraction(1, 5), 1]])
    ul = strong_ul_decompose(M, 1)
    assert ul.Pi.mapping == (2, 1) and ul.Pi.negate_first
    assert ul.etas == (5,)
    assert ul.Delta == RatMatrix.diag([5, Fraction(1, 5)])
    assert ul.reconstruct() == M


def test_errors():
    with pytest.raises(ZeroPivot):
        strong_ul_decompose(RatMatrix([[1, 1], [0, 1]]), 1)
    with pytest.raises(SingularMatrix):
        find_anti_leading_permutation(RatMatrix([[1, 2], [2, 4]]), 1)
    with pytest.raises(SingularMatrix):
        lu_decompose(RatMatrix([[1, 2], [2, 4]]))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_reconstruction_and_formulas(rng, n):
    for _ in range(8):
        M = random_nonsingular(rng, n)
        lu = lu_decompose(M)
        assert lu.reconstruct() == M
        assert lu.L.is_unit_lower_triangular() and lu.U.is_unit_upper_triangular() and lu.D.is_diagonal()
        assert lu.P.matrix().det() == 1
        assert lu_formula_mismatches(M, lu) == []
        for a in range(1, n + 1):
            if M[n - 1, a - 1] == 0:
                continue
            ul = strong_ul_decompose(M, a)
            assert ul.reconstruct() == M
            assert ul.Pi.mapping[-1] == a and ul.Pi.matrix().det() == 1
            assert ul_formula_mismatches(M, ul) == []
            B = ul.Pi.apply_columns(M)
            assert all(minor(B, range(n - q + 1, n + 1), range(n - q + 1, n + 1)) != 0 for q in range(1, n + 1))
            assert B.col(n - 1) == M.col(a - 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_ul_is_rotated_lu(rng, n):
    for _ in range(10):
        M = random_sl(rng, n)
        a = next(a for a in range(1, n + 1) if M[n - 1, a - 1] != 0)
        ul = strong_ul_decompose(M, a)
        lu = lu_decompose(rotate(ul.Pi.apply_columns(M)), SignedPermutation.identity(n))
        assert rotate(lu.L) == ul.V
        assert rotate(lu.D) == ul.Delta
        assert rotate(lu.U) == ul.Lambda
        assert ul.Delta.det() == 1
        assert ul.Delta.diagonal()[0] == ul.etas[0] and ul.Delta.diagonal()[-1] == 1 / ul.etas[-1]


def test_leading_permutation_minors(rng):
    for _ in range(30):
        M = random_nonsingular(rng, 4, bound=1)
        P = find_leading_permutation(M)
        B = P.apply_columns(M)
        assert all(minor(B, range(1, q + 1), range(1, q + 1)) != 0 for q in range(1, 5))


def test_explicit_permutation_override(rng):
    M = random_nonsingular(rng, 3)
    MMt = M @ M.T  # positive definite: every anti-leading principal minor is positive
    ul = strong_ul_decompose(MMt, Pi=SignedPermutation.identity(3))
    assert ul.reconstruct() == MMt
    assert ul.V == ul.Lambda.T
