"""LU-decomposition with column pivoting and the strong UL-decomposition.

``lu_decompose`` writes ``M = L D U P^-1``; ``strong_ul_decompose`` writes
``M = V Delta Lambda Pi_a^-1`` where ``Pi_a`` puts a chosen column ``a``
in the rightmost slot and leaves every anti-leading principal minor of
``M Pi_a`` nonzero. Both are computed by exact elimination; the minor
quotient formulas are what the tests check them against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, IndexOutOfRange, SingularMatrix, ZeroPivot
from .matrix import RatMatrix, SignedPermutation


@dataclass(frozen=True)
class LUResult:
    L: RatMatrix
    D: RatMatrix
    U: RatMatrix
    P: SignedPermutation
    #: leading principal minors y_1..y_n of M P (y_n = det)
    ys: tuple

    def reconstruct(self) -> RatMatrix:
        return self.L @ self.D @ self.U @ self.P.inverse_matrix()


@dataclass(frozen=True)
class ULResult:
    V: RatMatrix
    Delta: RatMatrix
    Lambda: RatMatrix
    Pi: SignedPermutation
    #: eta_1..eta_{n-1}; eta_p is the inverse anti-leading principal minor of order n-p
    etas: tuple

    def reconstruct(self) -> RatMatrix:
        return self.V @ self.Delta @ self.Lambda @ self.Pi.inverse_matrix()


def _require_square(M: RatMatrix) -> int:
    if not M.is_square or M.nrows == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got {M.shape}")
    return M.nrows


def find_leading_permutation(M: RatMatrix) -> SignedPermutation:
    """Column permutation making every leading principal minor of ``M P`` nonzero.

    Top-down elimination; at each row the smallest-index remaining column
    with a nonzero reduced entry is taken.
    """
    n = _require_square(M)
    work = [list(r) for r in M]
    remaining = list(range(n))
    chosen = []
    for i in range(n):
        c = next((c for c in remaining if work[i][c] != 0), None)
        if c is None:
            raise SingularMatrix("matrix is singular")
        remaining.remove(c)
        chosen.append(c)
        piv = work[i]
        for r in range(i + 1, n):
            f = work[r][c]
            if f:
                f /= piv[c]
                work[r] = [x - f * y for x, y in zip(work[r], piv)]
    return SignedPermutation.balanced([c + 1 for c in chosen])


def find_anti_leading_permutation(M: RatMatrix, a: int) -> SignedPermutation:
    """Permutation moving column ``a`` (1-based) rightmost with nonzero anti-leading principal minors.

    Bottom-up elimination: row n pivots on column a, then each row above
    takes the smallest-index unused column whose reduced entry is nonzero.
    """
    n = _require_square(M)
    if not 1 <= a <= n:
        raise IndexOutOfRange(f"column {a} outside 1..{n}")
    if M[n - 1, a - 1] == 0:
        raise ZeroPivot(f"M[{n}][{a}] is zero")
    work = [list(r) for r in M]
    remaining = [c for c in range(n) if c != a - 1]
    slots = [0] * n
    slots[n - 1] = a - 1
    for i in range(n - 1, -1, -1):
        if i == n - 1:
            c = a - 1
        else:
            c = next((c for c in remaining if work[i][c] != 0), None)
            if c is None:
                raise SingularMatrix("matrix is singular")
            remaining.remove(c)
            slots[i] = c
        piv = work[i]
        for r in range(i):
            f = work[r][c]
            if f:
                f /= piv[c]
                work[r] = [x - f * y for x, y in zip(work[r], piv)]
    return SignedPermutation.balanced([c + 1 for c in slots])


def _ldu(B: RatMatrix):
    """Unpivoted ``B = L D U``; raises SingularMatrix on a zero pivot."""
    n = B.nrows
    work = [list(r) for r in B]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    U = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = []
    for k in range(n):
        pk = work[k][k]
        if pk == 0:
            raise SingularMatrix(f"zero pivot at position {k + 1}")
        d.append(pk)
        for j in range(k + 1, n):
            U[k][j] = work[k][j] / pk
        for i in range(k + 1, n):
            L[i][k] = work[i][k] / pk
        for i in range(k + 1, n):
            lik = L[i][k]
            if lik:
                ri, rk = work[i], work[k]
                for j in range(k + 1, n):
                    ri[j] -= lik * rk[j]
    return RatMatrix(L), d, RatMatrix(U)


def _udl(B: RatMatrix):
    """Unpivoted ``B = V Delta Lambda`` by elimination from the bottom-right corner."""
    n = B.nrows
    work = [list(r) for r in B]
    V = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    Lam = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        pk = work[k][k]
        if pk == 0:
            raise SingularMatrix(f"zero anti-leading pivot at position {k + 1}")
        d[k] = pk
        for j in range(k):
            Lam[k][j] = work[k][j] / pk
        for i in range(k):
            V[i][k] = work[i][k] / pk
        for i in range(k):
            vik = V[i][k]
            if vik:
                ri, rk = work[i], work[k]
                for j in range(k):
                    ri[j] -= vik * rk[j]
    return RatMatrix(V), d, RatMatrix(Lam)


def lu_decompose(M: RatMatrix, P: SignedPermutation | None = None) -> LUResult:
    """``M = L D U P^-1`` with ``D = diag(y_1, y_2/y_1, ..., y_n/y_{n-1})``.

    ``y_p`` is the order-p leading principal minor of ``M P``. Pass ``P`` to
    force a permutation; it must leave all leading principal minors nonzero.
    """
    _require_square(M)
    if P is None:
        P = find_leading_permutation(M)
    L, d, U = _ldu(P.apply_columns(M))
    ys = []
    acc = Fraction(1)
    for x in d:
        acc *= x
        ys.append(acc)
    return LUResult(L, RatMatrix.diag(d), U, P, tuple(ys))


def strong_ul_decompose(M: RatMatrix, a: int | None = None, Pi: SignedPermutation | None = None) -> ULResult:
    """``M = V Delta Lambda Pi^-1`` with column ``a`` of ``M`` rightmost in ``M Pi``.

    ``Delta = diag(eta_1/eta_0, eta_2/eta_1, ..., eta_n/eta_{n-1})`` with
    ``eta_0 = 1/det M`` and ``eta_n = 1``; for det M = 1 this is
    ``diag(eta_1, eta_2/eta_1, ..., 1/eta_{n-1})``. ``a`` defaults to n.
    An explicit ``Pi`` overrides the permutation search.
    """
    n = _require_square(M)
    if Pi is None:
        Pi = find_anti_leading_permutation(M, n if a is None else a)
    elif a is not None and Pi.mapping[-1] != a:
        raise ValueError(f"permutation puts column {Pi.mapping[-1]} rightmost, not {a}")
    B = Pi.apply_columns(M)
    if B[n - 1, n - 1] == 0:
        raise ZeroPivot("bottom-right entry of M Pi is zero")
    V, d, Lam = _udl(B)
    # anti-leading principal minor of order q is d[n-q] * ... * d[n-1]
    etas = []
    acc = Fraction(1)
    for p in range(n - 1, 0, -1):
        acc *= d[p]
        etas.append(1 / acc)
    etas.reverse()
    return ULResult(V, RatMatrix.diag(d), Lam, Pi, tuple(etas))
