"""Seeded random matrices for fuzzing: SL(n, Q), SL(n, Z_p) and friends.

Everything takes a :class:`random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .matrix import RatMatrix, SignedPermutation

SMALL_PRIMES = (2, 3, 5, 7)


def random_rational(rng: random.Random, bound: int = 6, den_bound: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den_bound))


def random_matrix(rng: random.Random, m: int, n: int | None = None, bound: int = 6, den_bound: int = 6) -> RatMatrix:
    n = m if n is None else n
    return RatMatrix([[random_rational(rng, bound, den_bound) for _ in range(n)] for _ in range(m)])


def random_nonsingular(rng: random.Random, n: int, **kw) -> RatMatrix:
    while True:
        M = random_matrix(rng, n, **kw)
        if M.det() != 0:
            return M


def random_prime_power(rng: random.Random, primes=SMALL_PRIMES, max_exp: int = 2) -> Fraction:
    x = Fraction(1)
    for p in primes:
        x *= Fraction(p) ** rng.randint(-max_exp, max_exp)
    return x


def random_unit_upper(rng: random.Random, n: int, integral: bool = False, bound: int = 4) -> RatMatrix:
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if integral:
                rows[i][j] = Fraction(rng.randint(-bound, bound))
            else:
                rows[i][j] = Fraction(rng.randint(-bound, bound)) * random_prime_power(rng, max_exp=1)
    return RatMatrix(rows)


def random_unit_lower(rng: random.Random, n: int, integral: bool = False, bound: int = 4) -> RatMatrix:
    return random_unit_upper(rng, n, integral, bound).T


def random_signed_permutation(rng: random.Random, n: int) -> SignedPermutation:
    mapping = list(range(1, n + 1))
    rng.shuffle(mapping)
    return SignedPermutation.balanced(mapping)


def random_det_one_diagonal(rng: random.Random, n: int, primes=SMALL_PRIMES) -> RatMatrix:
    entries = [random_prime_power(rng, primes) * rng.choice((1, -1)) for _ in range(n - 1)]
    prod = Fraction(1)
    for x in entries:
        prod *= x
    return RatMatrix.diag(entries + [1 / prod])


def random_sl(rng: random.Random, n: int) -> RatMatrix:
    """Random element of SL(n, Q) with nontrivial p-adic structure at 2, 3, 5, 7.

    Built as a product of integer unit triangulars, signed permutations,
    rational unit triangulars and a det-1 diagonal of prime powers.
    """
    P1 = random_signed_permutation(rng, n)
    P2 = random_signed_permutation(rng, n)
    M = random_unit_upper(rng, n, integral=True) @ random_unit_lower(rng, n, integral=True)
    M = P1.apply_columns(M)
    M = random_unit_lower(rng, n) @ M
    M = M @ random_det_one_diagonal(rng, n)
    M = P2.apply_columns(M)
    M = random_unit_upper(rng, n) @ M
    if rng.random() < 0.5:
        M = M @ random_unit_lower(rng, n, integral=True)
    return M


def random_integral_sl(rng: random.Random, n: int) -> RatMatrix:
    """SL(n, Z) element from integer unit triangulars and signed permutations."""
    M = RatMatrix.identity(n)
    for _ in range(2):
        M = M @ random_unit_upper(rng, n, integral=True, bound=3)
        M = random_signed_permutation(rng, n).apply_columns(M)
        M = M @ random_unit_lower(rng, n, integral=True, bound=3)
    return M


def random_padic_unit(rng: random.Random, p: int, bound: int = 12) -> Fraction:
    def prime_to_p() -> int:
        while True:
            x = rng.randint(1, bound)
            if x % p:
                return x * rng.choice((1, -1))

    return Fraction(prime_to_p(), prime_to_p())


def random_padic_integer(rng: random.Random, p: int, bound: int = 12) -> Fraction:
    """A rational with non-negative p-adic valuation."""
    return random_padic_unit(rng, p, bound) * p ** rng.randint(0, 2) * rng.choice((0, 1, 1))


def random_slz_p(rng: random.Random, n: int, p: int) -> RatMatrix:
    """Random element of SL(n, Z_p): entries are p-adic integers, det is exactly 1."""
    def unit_upper():
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = random_padic_integer(rng, p)
        return RatMatrix(rows)

    units = [random_padic_unit(rng, p) for _ in range(n - 1)]
    prod = Fraction(1)
    for u in units:
        prod *= u
    D = RatMatrix.diag(units + [1 / prod])
    M = unit_upper() @ D @ unit_upper().T
    M = random_signed_permutation(rng, n).apply_columns(M)
    return M @ unit_upper()


def random_family_params(rng: random.Random, n: int, p: int):
    from .padic import FamilyParams

    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = random_padic_integer(rng, p)
    units = [random_padic_unit(rng, p) for _ in range(n - 1)]
    prod = Fraction(1)
    for u in units:
        prod *= u
    return FamilyParams(RatMatrix(rows), RatMatrix.diag(units + [1 / prod]))
