"""Generalized Pluecker coordinates and dilaton norms at any place of Q.

``|y_k|_v = ||p_{n-k}(M)||_v ** -1`` for every place ``v``, where
``p_j(M)`` is the vector of order-j anti-leading minors. Norms stay exact:
a finite place reports a valuation, the real place a squared Euclidean norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import IndexOutOfRange, NotSpecialLinear, ZeroVector
from .exact_arith import Place, format_rational, padic_valuation
from .matrix import RatMatrix, anti_leading_minors

#: int valuation (finite place) or Fraction squared norm (real place)
NormDescriptor = Union[int, Fraction]


@dataclass(frozen=True)
class PlueckerVector:
    order: int
    components: tuple  # ((subset, value), ...) in lexicographic subset order

    @property
    def values(self) -> tuple:
        return tuple(v for _, v in self.components)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "components": [{"columns": list(s), "value": format_rational(v)} for s, v in self.components],
        }


def pluecker(M: RatMatrix, k: int) -> PlueckerVector:
    if not M.is_square:
        raise IndexOutOfRange("Pluecker coordinates need a square matrix")
    if not 1 <= k <= M.nrows - 1:
        raise IndexOutOfRange(f"order {k} outside 1..{M.nrows - 1}")
    return PlueckerVector(k, tuple(anti_leading_minors(M, k)))


def place_norm(v, place: Place) -> NormDescriptor:
    """Minimal component valuation at a finite place, exact ``sum(v_i**2)`` at the real place.

    The finite-place value ``a`` encodes ``max_i |v_i|_p = p**-a``.
    """
    values = v.values if isinstance(v, PlueckerVector) else tuple(v)
    if not any(values):
        raise ZeroVector("norm of the zero vector")
    if place.is_finite:
        return min(padic_valuation(x, place.p) for x in values)
    return sum((Fraction(x) ** 2 for x in values), Fraction(0))


def dilaton_norm_unified(M: RatMatrix, k: int, place: Place) -> NormDescriptor:
    """``v_p(y_k)`` at a finite place, exact ``y_k**2`` at the real place."""
    n = M.nrows
    if not M.is_square or M.det() != 1:
        raise NotSpecialLinear("det M != 1")
    if not 1 <= k <= n - 1:
        raise IndexOutOfRange(f"dilaton index {k} outside 1..{n - 1}")
    norm = place_norm(pluecker(M, n - k), place)
    if place.is_finite:
        return -norm
    return 1 / norm


def norm_table(M: RatMatrix, places: list[Place]) -> list[dict]:
    """One row per dilaton index k with the exact ``|y_k|_v`` data at each place."""
    n = M.nrows
    rows = []
    for k in range(1, n):
        row = {"k": k}
        for place in places:
            d = dilaton_norm_unified(M, k, place)
            if place.is_finite:
                row[str(place)] = {"valuation": d, "norm": format_rational(Fraction(place.p) ** (-d))}
            else:
                row[str(place)] = {"squared": format_rational(d), "norm": float(d) ** 0.5}
        rows.append(row)
    return rows

