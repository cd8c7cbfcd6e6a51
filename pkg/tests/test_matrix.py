import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import leibniz_det, leibniz_minor
from iwasawa.errors import DimensionMismatch, IndexOutOfRange, SingularMatrix
from iwasawa.matrix import (
    RatMatrix,
    SignedPermutation,
    all_anti_leading_minors,
    anti_leading_minors,
    epsilon_product,
    minor,
    rotate,
    subsets,
)
from iwasawa.sampling import random_matrix, random_nonsingular

small_fraction = st.fractions(min_value=-9, max_value=9, max_denominator=7)


@st.composite
def square_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return RatMatrix(draw(st.lists(st.lists(small_fraction, min_size=n, max_size=n), min_size=n, max_size=n)))


def gkd_contraction(A_list, B_list):
    """Sum over all index tuples of the generalized Kronecker delta times vector components."""
    m = len(A_list)
    n = len(A_list[0]) if m else 0
    total = Fraction(0)
    for a in itertools.product(range(n), repeat=m):
        wa = Fraction(1)
        for s in range(m):
            wa *= A_list[s][a[s]]
        if not wa:
            continue
        for i in itertools.product(range(n), repeat=m):
            delta = leibniz_det([[Fraction(int(i[s] == a[t])) for t in range(m)] for s in range(m)])
            if not delta:
                continue
            wb = Fraction(1)
            for s in range(m):
                wb *= B_list[s][i[s]]
            total += delta * wa * wb
    return total


def test_minor_examples():
    M = RatMatrix([[1, 2], [3, 4]])
    assert minor(M, [], []) == 1
    assert minor(M, [1, 1], [1, 2]) == 0
    assert minor(M, [1, 2], [1, 2]) == -2  # 1*4 - 2*3
    assert minor(M, [2, 1], [1, 2]) == 2
    assert minor(M, [2], [1]) == 3


def test_minor_index_errors():
    M = RatMatrix.identity(3)
    with pytest.raises(IndexOutOfRange):
        minor(M, [0], [1])
    with pytest.raises(IndexOutOfRange):
        minor(M, [1], [4])
    with pytest.raises(DimensionMismatch):
        minor(M, [1, 2], [1])


@given(square_matrices())
def test_det_matches_leibniz(M):
    assert M.det() == leibniz_det(M.tolist())


@given(square_matrices(min_n=2, max_n=6), st.data())
def test_laplace_expansion_any_row(M, data):
    n = M.nrows
    i = data.draw(st.integers(1, n))
    expansion = sum(
        (Fraction(-1) ** (i + j) * M[i - 1, j - 1] * minor(M, [r for r in range(1, n + 1) if r != i], [c for c in range(1, n + 1) if c != j])
         for j in range(1, n + 1)),
        Fraction(0),
    )
    assert minor(M, list(range(1, n + 1)), list(range(1, n + 1))) == expansion


@given(square_matrices(min_n=2, max_n=5), st.data())
def test_minor_antisymmetry(M, data):
    n = M.nrows
    k = data.draw(st.integers(2, n))
    rows = data.draw(st.permutations(range(1, n + 1)))[:k]
    cols = data.draw(st.permutations(range(1, n + 1)))[:k]
    i, j = data.draw(st.sampled_from([(a, b) for a in range(k) for b in range(a + 1, k)]))
    swapped_rows = list(rows)
    swapped_rows[i], swapped_rows[j] = swapped_rows[j], swapped_rows[i]
    swapped_cols = list(cols)
    swapped_cols[i], swapped_cols[j] = swapped_cols[j], swapped_cols[i]
    base = minor(M, rows, cols)
    assert minor(M, swapped_rows, cols) == -base
    assert minor(M, rows, swapped_cols) == -base
    assert base == leibniz_minor(M, rows, cols)


def test_anti_leading_examples():
    I3 = RatMatrix.identity(3)
    vals = anti_leading_minors(I3, 2)
    assert [s for s, _ in vals] == [(1, 2), (1, 3), (2, 3)]
    assert [v for _, v in vals] == [0, 0, 1]
    assert anti_leading_minors(RatMatrix([[1, 2], [3, 4]]), 1) == [((1,), 3), ((2,), 4)]
    with pytest.raises(IndexOutOfRange):
        anti_leading_minors(I3, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_anti_leading_matches_per_subset(rng, n):
    for _ in range(5):
        M = random_matrix(rng, n)
        table = all_anti_leading_minors(M)
        for k in range(1, n + 1):
            rows = list(range(n - k + 1, n + 1))
            got = anti_leading_minors(M, k)
            assert [s for s, _ in got] == subsets(n, k)
            for sigma, value in got:
                assert value == leibniz_minor(M, rows, sigma)
                assert table[k][sigma] == value


def test_epsilon_examples():
    V, W, X = (1, 2, 3), (4, -1, Fraction(1, 2)), (0, 5, 7)
    assert epsilon_product([V], [W]) == 4 - 2 + Fraction(3, 2)
    assert epsilon_product([V, V], [W, X]) == 0
    assert epsilon_product([], []) == 1
    with pytest.raises(DimensionMismatch):
        epsilon_product([V], [W, X])
    with pytest.raises(DimensionMismatch):
        epsilon_product([(1, 2)], [(1, 2, 3)])


@pytest.mark.parametrize("m, n", [(1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5)])
def test_epsilon_matches_delta_contraction(rng, m, n):
    for _ in range(2):
        A = [random_matrix(rng, 1, n, bound=3).row(0) for _ in range(m)]
        B = [random_matrix(rng, 1, n, bound=3).row(0) for _ in range(m)]
        eps = epsilon_product(A, B)
        assert eps == gkd_contraction(A, B)
        assert eps == epsilon_product(B, A)
        if m >= 2:
            assert epsilon_product([A[1], A[0], *A[2:]], B) == -eps


def test_signed_permutation():
    P = SignedPermutation.balanced((2, 1))
    assert P.negate_first and P.is_odd
    assert P.matrix().det() == 1
    M = RatMatrix([[1, 2], [3, 4]])
    assert P.apply_columns(M) == M @ P.matrix()
    assert P.apply_columns(M) == RatMatrix([[-2, 1], [-4, 3]])
    assert P.matrix() @ P.inverse_matrix() == RatMatrix.identity(2)
    with pytest.raises(ValueError):
        SignedPermutation((1, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_balanced_permutations_have_det_one(n):
    for perm in itertools.permutations(range(1, n + 1)):
        assert SignedPermutation.balanced(perm).matrix().det() == 1


def test_matrix_basics(rng):
    M = random_nonsingular(rng, 4)
    assert M @ M.inverse() == RatMatrix.identity(4)
    assert rotate(rotate(M)) == M
    W = RatMatrix([[int(i + j == 3) for j in range(4)] for i in range(4)])
    assert rotate(M) == W @ M @ W
    assert RatMatrix.from_json(M.to_json()) == M
    assert M.T.T == M
    with pytest.raises(SingularMatrix):
        RatMatrix([[1, 2], [2, 4]]).inverse()
    with pytest.raises(DimensionMismatch):
        RatMatrix([[1, 2], [3]])
