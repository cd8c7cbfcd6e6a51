"""Iwasawa decomposition ``M = N A K`` over the p-adic numbers.

The decomposition is built by iterating the strong UL-decomposition: pivot
on a bottom-row entry of largest p-adic norm, peel the (integral) bottom row
of ``Lambda`` into ``K``, and recurse on the remaining (n-1) x (n-1) block.
Only the norms of the dilatons are unique; :func:`dilaton_valuations` gives
them in closed form from anti-leading minors, and :func:`apply_family` moves
between the different decompositions of the same matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, InvalidFamilyParams, NotSpecialLinear, SingularMatrix
from .exact_arith import INF, check_prime, format_valuation, padic_valuation, parse_valuation
from .lu_ul import strong_ul_decompose
from .matrix import RatMatrix, all_anti_leading_minors


@dataclass(frozen=True)
class PadicIwasawa:
    N: RatMatrix
    A: RatMatrix
    K: RatMatrix
    prime: int
    #: the decomposed matrix, kept so the result can be verified standalone
    M: RatMatrix | None = None
    dilatons: tuple = field(init=False)
    dilaton_valuations: tuple = field(init=False)

    def __post_init__(self):
        ys = []
        acc = Fraction(1)
        for x in self.A.diagonal()[:-1]:
            acc *= x
            ys.append(acc)
        object.__setattr__(self, "dilatons", tuple(ys))
        object.__setattr__(self, "dilaton_valuations", tuple(padic_valuation(y, self.prime) for y in ys))

    @property
    def axions(self) -> dict:
        """Above-diagonal entries of N keyed by 1-based (i, j)."""
        n = self.N.nrows
        return {(i + 1, j + 1): self.N[i, j] for i in range(n) for j in range(i + 1, n)}

    def product(self) -> RatMatrix:
        return self.N @ self.A @ self.K

    def to_json(self) -> dict:
        out = {
            "prime": self.prime,
            "N": self.N.to_json(),
            "A": self.A.to_json(),
            "K": self.K.to_json(),
            "dilaton_valuations": [format_valuation(v) for v in self.dilaton_valuations],
        }
        if self.M is not None:
            out["M"] = self.M.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PadicIwasawa":
        M = RatMatrix.from_json(obj["M"]) if obj.get("M") is not None else None
        dec = cls(
            RatMatrix.from_json(obj["N"]),
            RatMatrix.from_json(obj["A"]),
            RatMatrix.from_json(obj["K"]),
            int(obj["prime"]),
            M,
        )
        recorded = obj.get("dilaton_valuations")
        if recorded is not None and tuple(parse_valuation(v) for v in recorded) != dec.dilaton_valuations:
            raise ValueError("recorded dilaton_valuations disagree with A")
        return dec


@dataclass(frozen=True)
class FamilyParams:
    """X unit upper triangular over Z_p, Y diagonal over Z_p^x with det 1."""

    X: RatMatrix
    Y: RatMatrix

    def validate(self, p: int) -> None:
        problems = family_param_problems(self, p)
        if problems:
            raise InvalidFamilyParams("; ".join(problems))


def family_param_problems(params: FamilyParams, p: int) -> list[str]:
    X, Y = params.X, params.Y
    problems = []
    if X.shape != Y.shape or not X.is_square:
        return [f"X {X.shape} and Y {Y.shape} must be square of the same size"]
    if not X.is_unit_upper_triangular():
        problems.append("X is not unit upper triangular")
    if any(padic_valuation(x, p) < 0 for r in X for x in r):
        problems.append(f"X has an entry outside Z_{p}")
    if not Y.is_diagonal():
        problems.append("Y is not diagonal")
    if any(padic_valuation(y, p) != 0 for y in Y.diagonal()):
        problems.append(f"Y has a diagonal entry that is not a {p}-adic unit")
    if Y.det() != 1:
        problems.append("det Y != 1")
    return problems


def _check_special_linear(M: RatMatrix) -> None:
    if not M.is_square or M.nrows == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got {M.shape}")
    d = M.det()
    if d == 0:
        raise SingularMatrix("matrix is singular")
    if d != 1:
        raise NotSpecialLinear(f"det M = {d}, expected 1")


def _pivot_column(bottom_row, p: int) -> int:
    """0-based column of a largest-norm bottom-row entry; ties go to the smallest index."""
    vals = [padic_valuation(x, p) for x in bottom_row]
    best = min(vals)
    if best == INF:
        raise SingularMatrix("bottom row is zero")
    return vals.index(best)


def _decompose_general(M: RatMatrix, p: int):
    """``M = N A K`` for any nonsingular M, with K integral and det K = 1.

    Returns (N, diagonal entries of A, K) as lists of rows.
    """
    n = M.nrows
    if n == 1:
        x = M[0, 0]
        if x == 0:
            raise SingularMatrix("matrix is singular")
        return [[Fraction(1)]], [x], [[Fraction(1)]]

    a = _pivot_column(M.row(n - 1), p)
    ul = strong_ul_decompose(M, a + 1)
    V, Lam = ul.V, ul.Lambda
    d = ul.Delta.diagonal()

    # Delta * Lambda with the bottom row of Lambda replaced by e_n is block
    # diagonal; the top-left block is what remains to be decomposed.
    inner = RatMatrix([[d[i] * Lam[i, j] for j in range(n - 1)] for i in range(n - 1)])
    N1, a1, K1 = _decompose_general(inner, p)

    # N = V * diag(N1, 1)
    N = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n - 1):
            N[i][j] = sum((V[i, k] * N1[k][j] for k in range(n - 1)), Fraction(0))
        N[i][n - 1] = V[i, n - 1]

    # K = diag(K1, 1) * R * Pi^-1, R carrying the bottom row of Lambda
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R[n - 1] = list(Lam.row(n - 1))
    blockK = [list(r) + [Fraction(0)] for r in K1] + [[Fraction(0)] * (n - 1) + [Fraction(1)]]
    K = RatMatrix(blockK) @ RatMatrix(R) @ ul.Pi.inverse_matrix()
    return N, a1 + [d[n - 1]], K.tolist()


def decompose_padic(M: RatMatrix, p: int) -> PadicIwasawa:
    """One Iwasawa decomposition ``M = N A K`` with ``K`` in SL(n, Z_p).

    >>> M = RatMatrix([[1, 0], ["1/5", 1]])
    >>> dec = decompose_padic(M, 5)
    >>> dec.A
    RatMatrix([[5, 0], [0, 1/5]])
    >>> dec.dilaton_valuations
    (1,)
    """
    check_prime(p)
    _check_special_linear(M)
    N, diag_a, K = _decompose_general(M, p)
    A = RatMatrix.diag(diag_a)
    Kmat = RatMatrix(K)
    # det K = 1 follows from the sign-fixed permutations and det M = 1
    if A.det() != 1 or Kmat.det() != 1:
        raise AssertionError("internal error: A or K is not special linear")
    return PadicIwasawa(RatMatrix(N), A, Kmat, p, M)


def dilaton_valuations(M: RatMatrix, p: int) -> tuple:
    """``v_p(y_1), ..., v_p(y_{n-1})`` from the anti-leading minors alone.

    ``|y_{n-k}|_p`` is the inverse of the largest p-adic norm among the
    order-k anti-leading minors, so ``v_p(y_{n-k})`` is minus the smallest
    valuation among them.
    """
    check_prime(p)
    _check_special_linear(M)
    n = M.nrows
    minors = all_anti_leading_minors(M, n - 1)
    out = [0] * (n - 1)
    for k in range(1, n):
        out[n - k - 1] = -min(padic_valuation(x, p) for x in minors[k].values())
    return tuple(out)


def dilaton_valuations_containing(M: RatMatrix, p: int, column: int) -> tuple:
    """Same as :func:`dilaton_valuations` but only over column subsets containing ``column`` (1-based).

    Agrees with the unrestricted version whenever ``column`` holds a
    largest-norm entry of the bottom row.
    """
    check_prime(p)
    n = M.nrows
    minors = all_anti_leading_minors(M, n - 1)
    out = [0] * (n - 1)
    for k in range(1, n):
        out[n - k - 1] = -min(padic_valuation(x, p) for s, x in minors[k].items() if column in s)
    return tuple(out)


def apply_family(dec: PadicIwasawa, params: FamilyParams, p: int | None = None) -> PadicIwasawa:
    """Move to ``(N A X A^-1, A Y, (X Y)^-1 K)``, another decomposition of the same matrix."""
    p = dec.prime if p is None else check_prime(p)
    if params.X.shape != dec.N.shape:
        raise InvalidFamilyParams(f"params of size {params.X.shape} for a {dec.N.shape} decomposition")
    params.validate(p)
    X, Y = params.X, params.Y
    Ainv = RatMatrix.diag([1 / x for x in dec.A.diagonal()])
    N2 = dec.N @ dec.A @ X @ Ainv
    A2 = dec.A @ Y
    K2 = (X @ Y).inverse() @ dec.K
    return PadicIwasawa(N2, A2, K2, p, dec.M)


@dataclass
class MembershipReport:
    prime: int
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"prime": self.prime, "pass": self.ok, "checks": dict(self.checks)}


def verify_membership(dec: PadicIwasawa, p: int | None = None, M: RatMatrix | None = None) -> MembershipReport:
    """Itemized check that ``dec`` is a valid Iwasawa decomposition at ``p``.

    The target matrix is ``M`` if given, else the one recorded in ``dec``;
    with neither, the reconstruction item is reported as failing.
    """
    p = dec.prime if p is None else check_prime(p)
    target = M if M is not None else dec.M
    N, A, K = dec.N, dec.A, dec.K
    square = N.is_square and A.shape == N.shape == K.shape
    checks = {
        "N_unit_upper_triangular": square and N.is_unit_upper_triangular(),
        "A_diagonal": square and A.is_diagonal(),
        "A_det_one": square and A.is_diagonal() and A.det() == 1,
        "K_integral": all(padic_valuation(x, p) >= 0 for r in K for x in r),
        "K_det_one": K.is_square and K.det() == 1,
    }
    checks["reconstruction"] = bool(square and target is not None and target.shape == N.shape and N @ A @ K == target)
    return MembershipReport(p, checks)
