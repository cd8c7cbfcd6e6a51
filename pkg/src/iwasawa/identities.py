"""Exact checkers for the minor identities behind the p-adic dilaton formula.

Each checker evaluates both sides independently from :func:`minor` (or
epsilon products) and compares them as Fractions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, IndexOutOfRange
from .exact_arith import format_rational
from .matrix import RatMatrix, epsilon_product, minor

IDENTITIES = ("lemma1", "speciallemma1", "lemma2", "telescope")


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    lhs: Fraction
    rhs: Fraction
    # quotient form of the telescope identity; None when a denominator vanishes
    quotient_pass: bool | None = None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs and self.quotient_pass is not False

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "pass": self.passed,
        }


def _bounds(M: RatMatrix, rows: Sequence[int] = (), cols: Sequence[int] = ()) -> None:
    for r in rows:
        if not 1 <= r <= M.nrows:
            raise IndexOutOfRange(f"row index {r} outside 1..{M.nrows}")
    for c in cols:
        if not 1 <= c <= M.ncols:
            raise IndexOutOfRange(f"column index {c} outside 1..{M.ncols}")


def lemma1_check(M: RatMatrix, r: Sequence[int], c: Sequence[int], d: Sequence[int]) -> IdentityReport:
    """``M(r;c) M(r2..k; d2..k) = sum_a (-1)^(a+1) M(r; c_a, d2..k) M(r2..k; c without c_a)``.

    ``d`` holds the k-1 entries d_2..d_k.
    """
    k = len(r)
    if len(c) != k or len(d) != k - 1:
        raise DimensionMismatch(f"need |r| = |c| = k and |d| = k-1, got {len(r)}, {len(c)}, {len(d)}")
    _bounds(M, r, list(c) + list(d))
    r, c, d = list(r), list(c), list(d)
    lhs = minor(M, r, c) * minor(M, r[1:], d)
    rhs = Fraction(0)
    for a in range(k):
        term = minor(M, r, [c[a]] + d) * minor(M, r[1:], c[:a] + c[a + 1 :])
        rhs += -term if a % 2 else term
    return IdentityReport("lemma1", lhs, rhs)


def speciallemma1_check(M: RatMatrix, r: Sequence[int], c: Sequence[int]) -> IdentityReport:
    """Lemma 1 with the last row index doubling as a shared column.

    ``|r| = k+1``, ``|c| = k``; r_{k+1} is used as a column index too.
    """
    k = len(c)
    if len(r) != k + 1:
        raise DimensionMismatch(f"need |r| = |c| + 1, got {len(r)} and {len(c)}")
    _bounds(M, r, list(c) + list(r[1:]))
    r, c = list(r), list(c)
    last = r[k]
    lhs = minor(M, r, c + [last]) * minor(M, r[1:], r[1:])
    rhs = Fraction(0)
    for a in range(k):
        term = minor(M, r, [c[a]] + r[1:]) * minor(M, r[1:], c[:a] + c[a + 1 :] + [last])
        rhs += -term if a % 2 else term
    return IdentityReport("speciallemma1", lhs, rhs)


def lemma2_check(M: RatMatrix, r: Sequence[int], c: Sequence[int]) -> IdentityReport:
    """Determinant of the k x k matrix of bordered minors versus a product of nested minors."""
    k = len(c)
    if len(r) != k + 1 or k < 1:
        raise DimensionMismatch(f"need |r| = |c| + 1 >= 2, got {len(r)} and {len(c)}")
    _bounds(M, r, list(c) + list(r[1:]))
    r, c = list(r), list(c)
    entries = [[minor(M, r[i:], [c[j]] + r[i + 1 :]) for j in range(k)] for i in range(k)]
    lhs = RatMatrix(entries).det()
    rhs = minor(M, r, c + [r[k]])
    for i in range(1, k):
        rhs *= minor(M, r[i:], r[i:])
    return IdentityReport("lemma2", lhs, rhs)


def _eps(A, B) -> Fraction:
    # more than dim vectors are linearly dependent, so the product vanishes
    if A and len(A) > len(A[0]):
        return Fraction(0)
    return epsilon_product(A, B)


def telescope_check(M: RatMatrix, mu: int, nu: int, r: int) -> IdentityReport:
    """Divisionless telescope identity ``X = Y - Z`` on the rows of M.

    With ``R = (V_r..V_n)`` and ``R' = (V_{r+1}..V_n)``:
    ``X = eps(mu,R; nu,R) eps(R';R')``,
    ``Y = eps(mu,R'; nu,R') eps(R;R)``,
    ``Z = eps(mu,R'; R) eps(nu,R'; R)``.
    When ``eps(R;R)`` and ``eps(R';R')`` are nonzero the quotient form is
    checked as well.
    """
    n = M.nrows
    if not 1 <= mu <= nu <= r <= n:
        raise IndexOutOfRange(f"need 1 <= mu <= nu <= r <= {n}, got {mu}, {nu}, {r}")
    V = [M.row(i) for i in range(n)]
    Vmu, Vnu = V[mu - 1], V[nu - 1]
    R, Rp = V[r - 1 :], V[r:]
    gR = _eps(R, R)
    gRp = _eps(Rp, Rp)
    X = _eps([Vmu, *R], [Vnu, *R]) * gRp
    Y = _eps([Vmu, *Rp], [Vnu, *Rp]) * gR
    e_mu = _eps([Vmu, *Rp], R)
    e_nu = _eps([Vnu, *Rp], R)
    Z = e_mu * e_nu
    quotient = None
    if gR != 0 and gRp != 0:
        # y_r^2 = 1/gRp, y_{r-1}^2 = 1/gR, x_{mu r} = y_{r-1}^2 eps(mu,R'; R)
        y2_r, y2_rm1 = 1 / gRp, 1 / gR
        x_mu, x_nu = y2_rm1 * e_mu, y2_rm1 * e_nu
        left = _eps([Vmu, *Rp], [Vnu, *Rp]) / gRp - (y2_r / y2_rm1) * x_mu * x_nu
        right = _eps([Vmu, *R], [Vnu, *R]) / gR
        quotient = left == right
    return IdentityReport("telescope", X, Y - Z, quotient)


def _index_tuples(rng: random.Random, identity: str, n: int, cap: int) -> list:
    """Index tuples for one n x n matrix: exhaustive when small, else ``cap`` random draws.

    Random draws use distinct indices, since repeats make both sides vanish.
    """
    if identity == "telescope":
        pool = [(mu, nu, r) for r in range(1, n + 1) for nu in range(1, r + 1) for mu in range(1, nu + 1)]
        return pool if len(pool) <= cap else rng.sample(pool, cap)
    idx = range(1, n + 1)
    if identity == "lemma1":
        orders = range(1, n + 1)
        draw = lambda k: (rng.sample(idx, k), rng.sample(idx, k), rng.sample(idx, k - 1))
    else:
        orders = range(1, n)
        draw = lambda k: (rng.sample(idx, k + 1), rng.sample(idx, k))
    per_order = max(1, cap // len(orders))
    return [draw(k) for k in orders for _ in range(per_order)][:cap]


CHECKERS = {
    "lemma1": lemma1_check,
    "speciallemma1": speciallemma1_check,
    "lemma2": lemma2_check,
    "telescope": telescope_check,
}


def run_identity_suite(sizes: Sequence[int] = (2, 3, 4, 5, 6), trials: int = 100, seed: int = 0, cap: int = 200) -> dict:
    """Run every checker on ``trials`` random matrices per size.

    Per matrix, at most ``cap`` index tuples are drawn per identity. Returns
    ``{identity: {"checked": int, "passed": int, "failures": [...]}}``.
    """
    from .sampling import random_matrix

    rng = random.Random(seed)
    summary = {name: {"checked": 0, "passed": 0, "failures": []} for name in IDENTITIES}
    for n in sizes:
        for trial in range(trials):
            M = random_matrix(rng, n)
            for name in IDENTITIES:
                for args in _index_tuples(rng, name, n, cap):
                    rep = CHECKERS[name](M, *args)
                    s = summary[name]
                    s["checked"] += 1
                    if rep.passed:
                        s["passed"] += 1
                    else:
                        s["failures"].append({"n": n, "trial": trial, "indices": list(args)})
    return summary
