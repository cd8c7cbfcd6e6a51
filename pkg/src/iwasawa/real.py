"""Iwasawa decomposition over the reals from closed-form epsilon products.

Axions ``x_{mu nu}`` and squared dilatons ``y_mu**2`` are rational functions
of the rows of M and are computed exactly. Only ``A`` (square roots) and
``K = A^-1 N^-1 M`` are floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotSpecialLinear, PrecisionLoss, SingularMatrix
from .exact_arith import format_rational
from .matrix import RatMatrix, epsilon_product, max_abs_entry

#: max-norm tolerance for K K^T - I, and (relative to ||M||_max) for N A K - M
TOLERANCE = 1e-9


@dataclass(frozen=True)
class RealIwasawa:
    N: RatMatrix
    dilatons_squared: tuple
    A_float: np.ndarray
    K_float: np.ndarray
    residual: float
    orthogonality: float
    M: RatMatrix | None = None

    def to_json(self) -> dict:
        return {
            "field": "real",
            "N": self.N.to_json(),
            "dilatons_squared": [format_rational(y) for y in self.dilatons_squared],
            "A": [[float(x) for x in r] for r in self.A_float],
            "K": [[float(x) for x in r] for r in self.K_float],
            "residual": self.residual,
            "orthogonality": self.orthogonality,
        }


def _check_special_linear(M: RatMatrix) -> None:
    if not M.is_square or M.nrows == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got {M.shape}")
    d = M.det()
    if d == 0:
        raise SingularMatrix("matrix is singular")
    if d != 1:
        raise NotSpecialLinear(f"det M = {d}, expected 1")


def real_axions_dilatons(M: RatMatrix) -> tuple[RatMatrix, tuple]:
    """Exact ``N`` and ``(y_1**2, ..., y_{n-1}**2)``.

    ``1/y_mu**2`` is the Gram determinant of rows mu+1..n, and
    ``x_{mu nu} = y_{nu-1}**2 * eps(V_mu, V_{nu+1..n}; V_nu, V_{nu+1..n})``.

    >>> N, ys = real_axions_dilatons(RatMatrix([[2, 0], [0, "1/2"]]))
    >>> ys
    (Fraction(4, 1),)
    """
    _check_special_linear(M)
    n = M.nrows
    V = [M.row(i) for i in range(n)]
    # gram[mu] = eps(V_mu..V_n; V_mu..V_n) for 1-based mu = 1..n+1
    gram = {mu: epsilon_product(V[mu - 1 :], V[mu - 1 :]) for mu in range(1, n + 2)}
    # y_mu^2 for mu = 0..n, with y_0 = y_n = 1 when det M = 1
    y2 = {mu: 1 / gram[mu + 1] for mu in range(0, n + 1)}
    N = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for nu in range(2, n + 1):
        tail = V[nu:]
        for mu in range(1, nu):
            eps = epsilon_product([V[mu - 1], *tail], [V[nu - 1], *tail])
            N[mu - 1][nu - 1] = y2[nu - 1] * eps
    return RatMatrix(N), tuple(y2[mu] for mu in range(1, n))


def _unit_upper_inverse(N: RatMatrix) -> RatMatrix:
    n = N.nrows
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            inv[i][j] = -sum((N[i, k] * inv[k][j] for k in range(i + 1, j + 1)), Fraction(0))
    return RatMatrix(inv)


def real_decompose(M: RatMatrix, tolerance: float = TOLERANCE) -> RealIwasawa:
    """``M = N A K`` with ``K`` in SO(n); exact N and y**2, floating A and K.

    Raises PrecisionLoss when either the reconstruction residual (relative
    to ``||M||_max``) or ``||K K^T - I||_max`` exceeds ``tolerance``.
    """
    N, y2 = real_axions_dilatons(M)
    n = M.nrows
    full = (Fraction(1), *y2, Fraction(1))
    # A_ii = y_i / y_{i-1}; the ratio is taken exactly before the square root
    a = np.array([math.sqrt(full[i + 1] / full[i]) for i in range(n)], dtype=float)
    NinvM = _unit_upper_inverse(N) @ M
    K = NinvM.to_float() / a[:, None]
    A = np.diag(a)
    Mf = M.to_float()
    recon = N.to_float() @ A @ K
    scale = float(max_abs_entry(M))
    residual = float(np.max(np.abs(recon - Mf))) / scale
    orth = float(np.max(np.abs(K @ K.T - np.eye(n))))
    if residual > tolerance or orth > tolerance:
        raise PrecisionLoss(f"residual {residual:.3g}, orthogonality defect {orth:.3g} exceed {tolerance:g}")
    return RealIwasawa(N, y2, A, K, residual, orth, M)
