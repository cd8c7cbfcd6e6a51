"""Dense exact matrices, minors and epsilon (Gram-determinant) products.

Python-level indexing on :class:`RatMatrix` (``M[i, j]``, ``M.row(i)``) is
0-based. Every function that takes *index lists* in the minor notation
(:func:`minor`, :func:`anti_leading_minors`, :class:`SignedPermutation`)
uses 1-based positions, matching the usual ``M(r1..rk; c1..ck)`` notation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, SingularMatrix
from .exact_arith import format_rational, to_rational

IndexSubset = tuple  # strictly increasing 1-based column positions


class RatMatrix:
    """Immutable m x n matrix of Fractions stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def _wrap(cls, rows: tuple) -> "RatMatrix":
        # trusted constructor: rows is already a tuple of tuples of Fractions
        obj = cls.__new__(cls)
        obj._rows = rows
        obj.nrows = len(rows)
        obj.ncols = len(rows[0]) if rows else 0
        return obj

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "RatMatrix":
        n = m if n is None else n
        return cls._wrap(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(m)))

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        vals = [to_rational(x) for x in entries]
        n = len(vals)
        zero = Fraction(0)
        return cls._wrap(tuple(tuple(vals[i] if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows)
        return f"RatMatrix([{body}])"

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._wrap(tuple(zip(*self._rows)) if self._rows else ())

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._rows))
        return RatMatrix._wrap(
            tuple(tuple(sum(map(Fraction.__mul__, r, c), Fraction(0)) for c in cols) for r in self._rows)
        )

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return RatMatrix._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)))

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix._wrap(tuple(tuple(c * x for x in r) for r in self._rows))

    def replace(self, i: int, j: int, value) -> "RatMatrix":
        """Copy with entry (i, j) (0-based) set to ``value``."""
        rows = [list(r) for r in self._rows]
        rows[i][j] = to_rational(value)
        return RatMatrix(rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        """Select 0-based rows and columns, in the given order."""
        return RatMatrix._wrap(tuple(tuple(self._rows[i][j] for j in cols) for i in rows))

    def det(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatch(f"determinant of non-square {self.shape} matrix")
        return _det_rows(self._rows)

    def inverse(self) -> "RatMatrix":
        """Gauss-Jordan inverse; raises SingularMatrix."""
        if not self.is_square:
            raise DimensionMismatch(f"inverse of non-square {self.shape} matrix")
        n = self.nrows
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return RatMatrix._wrap(tuple(tuple(r[n:]) for r in a))

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self._rows) for j, x in enumerate(r) if i != j)

    def is_unit_upper_triangular(self) -> bool:
        return self.is_square and all(
            (x == 1 if i == j else x == 0) for i, r in enumerate(self._rows) for j, x in enumerate(r) if j <= i
        )

    def is_unit_lower_triangular(self) -> bool:
        return self.T.is_unit_upper_triangular()

    def diagonal(self) -> tuple:
        return tuple(self._rows[i][i] for i in range(min(self.shape)))

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self._rows], dtype=float).reshape(self.shape)

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[format_rational(x) for x in r] for r in self._rows],
        }

    @classmethod
    def from_json(cls, obj) -> "RatMatrix":
        """Accept the ``{"rows", "cols", "entries"}`` object or a bare list of rows."""
        if isinstance(obj, dict):
            m = cls(obj["entries"])
            if m.shape != (obj.get("rows", m.nrows), obj.get("cols", m.ncols)):
                raise DimensionMismatch(f"declared shape {obj.get('rows')}x{obj.get('cols')} != entries {m.shape}")
            return m
        return cls(obj)


def _det_rows(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-free Bareiss elimination after clearing row denominators."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    scale = 1
    a = []
    for r in rows:
        d = math.lcm(*(x.denominator for x in r))
        scale *= d
        a.append([x.numerator * (d // x.denominator) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def _check_indices(indices: Sequence[int], bound: int, what: str) -> None:
    for i in indices:
        if not isinstance(i, int) or not 1 <= i <= bound:
            raise IndexOutOfRange(f"{what} index {i!r} outside 1..{bound}")


def minor(M: RatMatrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on 1-based ``rows`` x ``cols``, in the order given.

    Repeated indices are allowed and give 0; the empty minor is 1.

    >>> minor(RatMatrix([[1, 2], [3, 4]]), [1, 2], [1, 2])
    Fraction(-2, 1)
    """
    if len(rows) != len(cols):
        raise DimensionMismatch(f"{len(rows)} rows but {len(cols)} columns")
    _check_indices(rows, M.nrows, "row")
    _check_indices(cols, M.ncols, "column")
    if len(set(rows)) < len(rows) or len(set(cols)) < len(cols):
        return Fraction(0)
    data = M._rows
    return _det_rows([[data[i - 1][j - 1] for j in cols] for i in rows])


def subsets(n: int, k: int) -> list[IndexSubset]:
    """All 1-based k-subsets of 1..n in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), k))


def all_anti_leading_minors(M: RatMatrix, max_order: int | None = None) -> dict[int, dict[IndexSubset, Fraction]]:
    """Every anti-leading minor of every order up to ``max_order``.

    Builds order k from order k-1 by Laplace expansion along the top
    selected row (row ``m-k+1``), so each lower-order minor is computed once
    and shared by all its supersets. Total work is about ``n * 2**n``
    multiplications.
    """
    m, n = M.shape
    top = min(m, n) if max_order is None else max_order
    if not 0 <= top <= min(m, n):
        raise IndexOutOfRange(f"order {max_order} outside 0..{min(m, n)}")
    out: dict[int, dict[IndexSubset, Fraction]] = {0: {(): Fraction(1)}}
    prev = out[0]
    for k in range(1, top + 1):
        row = M.row(m - k)
        cur: dict[IndexSubset, Fraction] = {}
        for sigma in itertools.combinations(range(1, n + 1), k):
            total = Fraction(0)
            for a, c in enumerate(sigma):
                x = row[c - 1]
                if x:
                    term = x * prev[sigma[:a] + sigma[a + 1 :]]
                    total = total - term if a & 1 else total + term
            cur[sigma] = total
        out[k] = cur
        prev = cur
    return out


def anti_leading_minors(M: RatMatrix, k: int) -> list[tuple[IndexSubset, Fraction]]:
    """Order-k minors on the last k rows, one per column subset, lexicographic."""
    if not M.is_square:
        raise DimensionMismatch("anti-leading minors need a square matrix")
    if not 1 <= k <= M.nrows:
        raise IndexOutOfRange(f"order {k} outside 1..{M.nrows}")
    return list(all_anti_leading_minors(M, k)[k].items())


def epsilon_product(A_list: Sequence[Sequence], B_list: Sequence[Sequence]) -> Fraction:
    """Totally antisymmetric product eps(A1..Am; B1..Bm).

    Evaluated as the Gram determinant ``det(<A_i, B_j>)``, which equals the
    generalized-Kronecker-delta contraction. Empty lists give 1.
    """
    if len(A_list) != len(B_list):
        raise DimensionMismatch(f"{len(A_list)} vs {len(B_list)} vectors")
    vecs = list(A_list) + list(B_list)
    if not vecs:
        return Fraction(1)
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise DimensionMismatch("vectors of differing dimension")
    if len(A_list) > dim:
        raise DimensionMismatch(f"{len(A_list)} vectors in dimension {dim}")
    gram = [[sum((to_rational(x) * to_rational(y) for x, y in zip(a, b)), Fraction(0)) for b in B_list] for a in A_list]
    return _det_rows(gram)


@dataclass(frozen=True)
class SignedPermutation:
    """Column permutation with an optional sign flip on the first column.

    ``mapping[j-1]`` is the original column that lands in position ``j``
    of ``M @ P.matrix()``. With ``negate_first`` set, position 1 of the
    product is additionally negated, which turns an odd permutation into a
    determinant +1 matrix.
    """

    mapping: tuple
    negate_first: bool = False

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(1, n + 1)):
            raise ValueError(f"{self.mapping!r} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.mapping)

    @property
    def is_odd(self) -> bool:
        seen = [False] * self.n
        transpositions = 0
        for start in range(self.n):
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.mapping[j] - 1
                length += 1
            if length:
                transpositions += length - 1
        return bool(transpositions & 1)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def balanced(cls, mapping: Sequence[int]) -> "SignedPermutation":
        """The determinant +1 version of ``mapping``."""
        p = cls(tuple(mapping))
        return cls(p.mapping, p.is_odd)

    def matrix(self) -> RatMatrix:
        n = self.n
        rows = [[Fraction(0)] * n for _ in range(n)]
        for pos, src in enumerate(self.mapping):
            rows[src - 1][pos] = Fraction(-1 if (pos == 0 and self.negate_first) else 1)
        return RatMatrix(rows)

    def inverse_matrix(self) -> RatMatrix:
        # signed permutation matrices are orthogonal
        return self.matrix().T

    def apply_columns(self, M: RatMatrix) -> RatMatrix:
        """``M @ self.matrix()`` without the multiplication."""
        if M.ncols != self.n:
            raise DimensionMismatch(f"permutation of size {self.n} on {M.ncols} columns")
        out = []
        for r in M:
            new = [r[src - 1] for src in self.mapping]
            if self.negate_first:
                new[0] = -new[0]
            out.append(tuple(new))
        return RatMatrix._wrap(tuple(out))

    def to_json(self) -> dict:
        return {"mapping": list(self.mapping), "negate_first": self.negate_first}


def rotate(M: RatMatrix) -> RatMatrix:
    """``W M W`` with W the exchange matrix: a 180 degree rotation of the entries."""
    return RatMatrix._wrap(tuple(tuple(reversed(r)) for r in reversed(M._rows)))


def max_abs_entry(M: RatMatrix) -> Fraction:
    return max((abs(x) for r in M for x in r), default=Fraction(0))
