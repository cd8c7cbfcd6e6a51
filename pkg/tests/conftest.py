import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240607)


def leibniz_det(rows) -> Fraction:
    """Determinant as an explicit signed sum over permutations; independent of Bareiss."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def leibniz_minor(M, rows, cols) -> Fraction:
    return leibniz_det([[M[i - 1, j - 1] for j in cols] for i in rows])


def lu_formula_mismatches(M, res, minor_fn=leibniz_minor):
    """Entries of L, D, U that differ from the leading-minor quotients of M P."""
    B = res.P.apply_columns(M)
    n = M.nrows
    y = [Fraction(1)] + [minor_fn(B, range(1, p + 1), range(1, p + 1)) for p in range(1, n + 1)]
    bad = []
    for p in range(1, n + 1):
        if res.D[p - 1, p - 1] != y[p] / y[p - 1]:
            bad.append(("D", p))
        head = list(range(1, p))
        for i in range(p, n + 1):
            if res.L[i - 1, p - 1] != minor_fn(B, head + [i], head + [p]) / y[p]:
                bad.append(("L", i, p))
            if res.U[p - 1, i - 1] != minor_fn(B, head + [p], head + [i]) / y[p]:
                bad.append(("U", p, i))
    return bad


def ul_formula_mismatches(M, res, minor_fn=leibniz_minor):
    B = res.Pi.apply_columns(M)
    n = M.nrows
    alpm = lambda q: minor_fn(B, range(n - q + 1, n + 1), range(n - q + 1, n + 1))
    eta = {p: 1 / alpm(n - p) for p in range(0, n + 1)}
    bad = [("eta", p) for p in range(1, n) if res.etas[p - 1] != eta[p]]
    for p in range(1, n + 1):
        if res.Delta[p - 1, p - 1] != eta[p] / eta[p - 1]:
            bad.append(("Delta", p))
    for i in range(1, n + 1):
        tail = list(range(i + 1, n + 1))
        for p in range(1, i + 1):
            if res.V[p - 1, i - 1] != minor_fn(B, [p] + tail, [i] + tail) * eta[i - 1]:
                bad.append(("V", p, i))
            if res.Lambda[i - 1, p - 1] != minor_fn(B, [i] + tail, [p] + tail) * eta[i - 1]:
                bad.append(("Lambda", i, p))
    return bad


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
