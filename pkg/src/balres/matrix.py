"""Exact dense matrices over the rationals.

Entries are ``gmpy2.mpq`` values, which are always stored in lowest terms.
Matrices are immutable; every operation returns a new object.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import NullSpaceMismatch, SingularMatrixError

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def rational(value) -> Rational:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to an exact rational.

    Floats are rejected: they would silently import rounding error.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            f = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        return mpq(f.numerator, f.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a 'p/q' string or a Fraction")
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(q) -> str:
    """``p/q`` text form, or ``p`` when the denominator is 1."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class RMatrix:
    """Dense rows x cols matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(rational(x) for x in row) for row in data)
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ValueError("rows must be non-empty and of equal length")
        self._data = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def _wrap(cls, data):
        # trusted constructor: data is already a tuple of tuples of mpq
        obj = RMatrix.__new__(RMatrix)
        obj._data = data
        obj.rows = len(data)
        obj.cols = len(data[0])
        return obj

    # -- construction helpers ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RMatrix":
        cols = rows if cols is None else cols
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["RMatrix"]]) -> "RMatrix":
        out = []
        for block_row in grid:
            height = block_row[0].rows
            if any(b.rows != height for b in block_row):
                raise ValueError("blocks in a block row must share a height")
            for r in range(height):
                out.append(tuple(x for b in block_row for x in b._data[r]))
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise ValueError("block rows have different widths")
        return cls._wrap(tuple(out))

    @classmethod
    def vstack(cls, mats: Sequence["RMatrix"]) -> "RMatrix":
        return cls.from_blocks([[m] for m in mats])

    @classmethod
    def hstack(cls, mats: Sequence["RMatrix"]) -> "RMatrix":
        return cls.from_blocks([list(mats)])

    @classmethod
    def block_diag(cls, blocks: Sequence["RMatrix"]) -> "RMatrix":
        sizes = [b.cols for b in blocks]
        grid = []
        for i, b in enumerate(blocks):
            grid.append([b if j == i else cls.zeros(b.rows, sizes[j]) for j in range(len(blocks))])
        return cls.from_blocks(grid)

    # -- access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list[Rational]]:
        return [list(r) for r in self._data]

    def entries(self):
        for i, r in enumerate(self._data):
            for j, x in enumerate(r):
                yield i, j, x

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RMatrix":
        return RMatrix._wrap(tuple(tuple(self._data[i][j] for j in cols) for i in rows))

    def principal(self, indices: Sequence[int]) -> "RMatrix":
        return self.submatrix(indices, indices)

    def as_block(self, s: int) -> "BlockMatrix":
        return BlockMatrix(self, s)

    @property
    def T(self) -> "RMatrix":
        return RMatrix._wrap(tuple(zip(*self._data)))

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    # -- arithmetic ----------------------------------------------------------

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return RMatrix._wrap(
            tuple(tuple(map(operator.add, a, b)) for a, b in zip(self._data, other._data))
        )

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return RMatrix._wrap(
            tuple(tuple(map(operator.sub, a, b)) for a, b in zip(self._data, other._data))
        )

    def __neg__(self) -> "RMatrix":
        return RMatrix._wrap(tuple(tuple(-x for x in r) for r in self._data))

    def scale(self, c) -> "RMatrix":
        c = rational(c)
        return RMatrix._wrap(tuple(tuple(c * x for x in r) for r in self._data))

    def __mul__(self, c):
        if isinstance(c, RMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = rational(c)
        if not c:
            raise ZeroDivisionError("division of a matrix by zero")
        return self.scale(ONE / c)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = other._data
        width = other.cols
        out = []
        for r in self._data:
            acc = [ZERO] * width
            for k, x in enumerate(r):
                if x:
                    orow = other_rows[k]
                    for j in range(width):
                        y = orow[j]
                        if y:
                            acc[j] += x * y
            out.append(tuple(acc))
        return RMatrix._wrap(tuple(out))

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def common_denominator(self) -> int:
        from math import lcm

        d = 1
        for r in self._data:
            for x in r:
                d = lcm(d, int(x.denominator))
        return d

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._data]

    def pretty(self) -> str:
        """Integer grid times a common factor, the way such matrices are printed by hand."""
        d = self.common_denominator()
        ints = [[str(int(x * d)) for x in r] for r in self._data]
        width = max(len(t) for r in ints for t in r)
        body = "\n".join("  " + " ".join(t.rjust(width) for t in r) for r in ints)
        if d == 1:
            return body
        return f"(1/{d}) *\n{body}"

    def __repr__(self) -> str:
        return f"RMatrix({self.to_strings()!r})"

    __str__ = pretty


class BlockMatrix(RMatrix):
    """An (n*s) x (n*s) matrix viewed as an n x n grid of s x s blocks."""

    __slots__ = ("s", "n")

    def __init__(self, body: RMatrix | Iterable[Iterable], s: int):
        if not isinstance(body, RMatrix):
            body = RMatrix(body)
        if s < 1 or not body.is_square or body.rows % s:
            raise ValueError(f"a {body.shape} matrix has no {s}x{s} block structure")
        self._data = body._data
        self.rows = body.rows
        self.cols = body.cols
        self.s = s
        self.n = body.rows // s

    @classmethod
    def from_block_grid(cls, grid: Sequence[Sequence[RMatrix]]) -> "BlockMatrix":
        s = grid[0][0].rows
        return cls(RMatrix.from_blocks(grid), s)

    def block(self, i: int, j: int) -> RMatrix:
        s = self.s
        return RMatrix._wrap(tuple(r[j * s:(j + 1) * s] for r in self._data[i * s:(i + 1) * s]))

    def diagonal_blocks(self) -> list[RMatrix]:
        return [self.block(i, i) for i in range(self.n)]

    def __repr__(self) -> str:
        return f"BlockMatrix(n={self.n}, s={self.s}, {self.to_strings()!r})"


def identity(n: int) -> RMatrix:
    return RMatrix.identity(n)


def zeros(rows: int, cols: int | None = None) -> RMatrix:
    return RMatrix.zeros(rows, cols)


def block_ones(n: int, s: int) -> RMatrix:
    """U = [I_s, ..., I_s]' of shape (n*s) x s."""
    return RMatrix.vstack([RMatrix.identity(s)] * n)


def block_all_ones(n: int, s: int) -> BlockMatrix:
    """J = U U': every s x s block equal to I_s."""
    u = block_ones(n, s)
    return BlockMatrix(u @ u.T, s)


def _as_lists(m: RMatrix) -> list[list]:
    return [list(r) for r in m._data]


def invert(m: RMatrix) -> RMatrix:
    """Exact inverse by Gauss-Jordan elimination.

    Pivot is the first nonzero entry of the column; with exact arithmetic
    pivot magnitude has no effect on accuracy.
    """
    if not m.is_square:
        raise ValueError("only square matrices are invertible")
    n = m.rows
    a = _as_lists(m)
    inv = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise SingularMatrixError(f"no nonzero pivot in column {col + 1}", column=col)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = ONE / a[col][col]
        arow = [x * p for x in a[col]]
        irow = [x * p for x in inv[col]]
        a[col], inv[col] = arow, irow
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f:
                ar, ir = a[r], inv[r]
                for j in range(col, n):
                    if arow[j]:
                        ar[j] -= f * arow[j]
                for j in range(n):
                    if irow[j]:
                        ir[j] -= f * irow[j]
    return RMatrix._wrap(tuple(tuple(r) for r in inv))


def solve(m: RMatrix, rhs: RMatrix) -> RMatrix:
    return invert(m) @ rhs


def det(m: RMatrix) -> Rational:
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = _as_lists(m)
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                ar, ac = a[r], a[col]
                for j in range(col, n):
                    ar[j] -= f * ac[j]
    return result


def rank(m: RMatrix) -> int:
    a = _as_lists(m)
    rows, cols = m.rows, m.cols
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][col]
        for i in range(r + 1, rows):
            f = a[i][col] / p
            if f:
                ai, ar = a[i], a[r]
                for j in range(col, cols):
                    ai[j] -= f * ar[j]
        r += 1
        if r == rows:
            break
    return r


def symmetric_part(m: RMatrix) -> RMatrix:
    return (m + m.T) / 2


def pinv_laplacian_like(a: BlockMatrix, check: bool = True) -> BlockMatrix:
    """Moore-Penrose inverse of a matrix whose null space is exactly col(U).

    Uses A^+ = (A + J/n)^-1 - J/n, valid when A U = 0, U' A = 0 and
    A + J/n is nonsingular.  With ``check`` the four Penrose conditions and
    A A^+ = A^+ A = I - J/n are verified exactly before returning.
    """
    n, s = a.n, a.s
    u = block_ones(n, s)
    if not (a @ u).is_zero():
        raise NullSpaceMismatch("block row sums of the matrix are not zero (A U != 0)")
    if not (u.T @ a).is_zero():
        raise NullSpaceMismatch("block column sums of the matrix are not zero (U' A != 0)")
    j_over_n = block_all_ones(n, s) / n
    try:
        shifted_inv = invert(a + j_over_n)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"A + J/n is singular: rank of A is below {n * s - s}", column=exc.column
        ) from exc
    pinv = BlockMatrix(shifted_inv - j_over_n, s)
    if check:
        a_pinv = a @ pinv
        pinv_a = pinv @ a
        projector = RMatrix.identity(n * s) - j_over_n
        ok = (
            a_pinv @ a == a
            and pinv_a @ pinv == pinv
            and a_pinv.T == a_pinv
            and pinv_a.T == pinv_a
            and a_pinv == projector
            and pinv_a == projector
        )
        if not ok:
            raise NullSpaceMismatch("Penrose conditions fail; null space of A is larger than col(U)")
    return pinv


def is_symmetric_pd(m: RMatrix) -> bool:
    """Symmetric with every leading principal minor positive.

    Elimination without row exchanges produces pivots d_k equal to the ratio
    of consecutive leading minors, so all minors are positive iff every pivot
    is positive.
    """
    if not m.is_square or m != m.T:
        return False
    a = _as_lists(m)
    n = m.rows
    for k in range(n):
        p = a[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                ai, ak = a[i], a[k]
                for j in range(k, n):
                    ai[j] -= f * ak[j]
    return True


def _symmetric_is_psd(a: list[list]) -> bool:
    # Diagonal-pivot Schur complements: a symmetric matrix with a_kk > 0 is
    # PSD iff its Schur complement on a_kk is; a PSD matrix with a zero
    # diagonal entry has that whole row zero.
    while a:
        n = len(a)
        if any(a[i][i] < 0 for i in range(n)):
            return False
        k = next((i for i in range(n) if a[i][i] > 0), None)
        if k is None:
            return all(not x for r in a for x in r)
        p = a[k][k]
        rk = a[k]
        keep = [i for i in range(n) if i != k]
        a = [[a[i][j] - a[i][k] * rk[j] / p for j in keep] for i in keep]
    return True


def is_psd_via_quadratic_form(m: RMatrix) -> bool:
    """True iff x' m x >= 0 for every real x; m need not be symmetric."""
    if not m.is_square:
        return False
    return _symmetric_is_psd(_as_lists(symmetric_part(m)))


def is_positive_definite(m: RMatrix) -> bool:
    """True iff x' m x > 0 for every real x != 0; m need not be symmetric."""
    if not m.is_square:
        return False
    return is_symmetric_pd(symmetric_part(m))


def is_row_diag_dominant(m: RMatrix) -> bool:
    if not m.is_square:
        return False
    for i, r in enumerate(m._data):
        off = sum((abs(x) for j, x in enumerate(r) if j != i), ZERO)
        if abs(r[i]) < off:
            return False
    return True


def max_violation(lhs: RMatrix, rhs: RMatrix):
    """Entry (i, j, lhs_ij, rhs_ij) with the largest |lhs - rhs|, or None if equal."""
    if lhs.shape != rhs.shape:
        raise ValueError(f"shape mismatch: {lhs.shape} vs {rhs.shape}")
    worst = None
    worst_gap = ZERO
    for (i, j, x), y in zip(lhs.entries(), (y for r in rhs._data for y in r)):
        gap = abs(x - y)
        if gap > worst_gap:
            worst, worst_gap = (i, j, x, y), gap
    return worst
