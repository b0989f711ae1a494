"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  Determinants and ranks use
fraction-free (Bareiss) elimination on integer matrices obtained by clearing
row denominators; nothing in this module ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError

Scalar = Fraction


def scalar(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` literal) to a Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational literal: {text!r}") from None
    return value


def format_scalar(value: Fraction) -> str:
    return str(value)


class Matrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(scalar(x) for x in row) for row in entries)
        if grid:
            width = len(grid[0])
            if any(len(row) != width for row in grid):
                raise DimensionError("ragged matrix rows")
        else:
            width = cols or 0
        if cols is not None and width != cols:
            raise DimensionError(f"expected {cols} columns, got {width}")
        self._entries = grid
        self.rows = len(grid)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._entries[i][j]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return self.rows

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self):
        body = "; ".join(" ".join(map(str, row)) for row in self._entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def row(self, i: int) -> tuple:
        return self._entries[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._entries]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._entries), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other._entries)) if other.rows else [()] * other.cols
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self._entries],
            cols=other.cols,
        )


def _as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


def integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale ``row`` by the (positive) lcm of its denominators."""
    mult = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * mult) for x in row]


def bareiss_det(a: list[list[int]]) -> int:
    """Determinant of a square integer matrix; ``a`` is destroyed."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def bareiss_rank(a: list[list[int]]) -> int:
    """Row rank of an integer matrix by fraction-free elimination; ``a`` is destroyed."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        arc = a[r][c]
        rowr = a[r]
        for i in range(r + 1, rows):
            rowi = a[i]
            aic = rowi[c]
            for j in range(c + 1, cols):
                rowi[j] = (rowi[j] * arc - aic * rowr[j]) // prev
            rowi[c] = 0
        prev = arc
        r += 1
    return r


def det(m) -> Fraction:
    """Exact determinant of a square rational matrix."""
    m = _as_matrix(m)
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    scale = 1
    ints = []
    for row in m:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        scale *= mult
        ints.append([int(x * mult) for x in row])
    return Fraction(bareiss_det(ints), scale)


def rank(m) -> int:
    m = _as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return bareiss_rank([integer_row(row) for row in m])


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns, by pivoting on the first nonzero row."""
    m = _as_matrix(m)
    a = m.tolist()
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace_basis(m) -> Matrix:
    """Basis of ``{x : m x = 0}`` as the rows of a matrix.

    One row per free column of the reduced echelon form, in increasing column
    order, with a 1 in that free column.
    """
    m = _as_matrix(m)
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -a[i][f]
        basis.append(x)
    return Matrix(basis, cols=m.cols)


def sign(x) -> int:
    return (x > 0) - (x < 0)
