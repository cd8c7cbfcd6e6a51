"""Exact rational scalars and p-adic valuations.

Rationals are plain :class:`fractions.Fraction` objects. A p-adic norm is
never materialized as a float; it is carried as its valuation ``a`` (the
norm being ``p**-a``), with ``INF`` standing in for the valuation of zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import NonPrime

Rational = Fraction

#: Valuation of zero. Compares greater than every int.
INF = math.inf

Valuation = Union[int, float]

_PRIME_LIMIT = 2**64


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` or ``"0.25"`` exactly.

    Floats are rejected: their binary expansion is almost never what the
    caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    """Serialize as ``"num"`` or ``"num/den"`` (reduced, den > 0)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    """Deterministic primality for 0 <= p < 2**64; larger inputs are refused."""
    if not isinstance(p, int) or isinstance(p, bool):
        return False
    if p < 2 or p >= _PRIME_LIMIT:
        return False
    from sympy import isprime

    return bool(isprime(p))


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise NonPrime(f"{p!r} is not a prime below 2**64")
    return p


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    # peel off p**(2**j) chunks first so huge powers stay cheap
    while n % p == 0:
        q, e = p, 1
        while n % (q * q) == 0:
            q *= q
            e *= 2
        n //= q
        v += e
    return v


def padic_valuation(x, p: int) -> Valuation:
    """Return ``a`` with ``x = (m'/n') * p**a`` and ``m'``, ``n'`` prime to ``p``.

    ``padic_valuation(0, p)`` is ``INF``.

    >>> padic_valuation(50, 5)
    2
    >>> padic_valuation(Fraction(2, 9), 3)
    -2
    """
    check_prime(p)
    x = to_rational(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def padic_norm(x, p: int) -> Fraction:
    """The exact norm ``p**-v``; zero maps to zero."""
    v = padic_valuation(x, p)
    if v == INF:
        return Fraction(0)
    return Fraction(p) ** (-v)


class PadicClass(str, enum.Enum):
    UNIT = "unit"
    NON_UNIT_INTEGER = "non_unit_integer"
    NON_INTEGER = "non_integer"


def classify_padic(x, p: int) -> PadicClass:
    v = padic_valuation(x, p)
    if v == 0:
        return PadicClass.UNIT
    if v > 0:
        return PadicClass.NON_UNIT_INTEGER
    return PadicClass.NON_INTEGER


def is_padic_integer(x, p: int) -> bool:
    return padic_valuation(x, p) >= 0


def is_padic_unit(x, p: int) -> bool:
    return padic_valuation(x, p) == 0


def format_valuation(v: Valuation):
    """Integers pass through; the valuation of zero becomes ``"inf"``."""
    return "inf" if v == INF else int(v)


def parse_valuation(obj) -> Valuation:
    if obj == "inf":
        return INF
    return int(obj)


@dataclass(frozen=True)
class Place:
    """A completion of Q: a finite prime ``p`` or the real place (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            check_prime(self.p)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = str(text).strip().lower()
        if t in ("inf", "infinity", "real", "oo"):
            return cls(None)
        try:
            p = int(t)
        except ValueError:
            raise NonPrime(f"{text!r} is neither a prime nor 'inf'") from None
        return cls(p)

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)
