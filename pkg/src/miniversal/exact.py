"""Exact scalars and dense matrices over Q and Q(i).

Real scalars are plain :class:`fractions.Fraction` values.  Complex scalars
with a nonzero imaginary part are :class:`GaussianRational`; arithmetic on
them falls back to a ``Fraction`` whenever the imaginary part cancels, which
keeps elimination on mostly-real matrices cheap.

Every matrix carries a field tag (:attr:`Field.R` or :attr:`Field.C`).  The
tag decides how dimensions are counted and what "adjoint" means; it does not
change the Python type of real-valued entries.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union


class Field(str, enum.Enum):
    R = "R"
    C = "C"


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "" if abs(self.im) == 1 else str(abs(self.im))
        sign = "-" if self.im < 0 else "+"
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{self.re}{sign}{im}i"

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return gaussian(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            d = other.re * other.re + other.im * other.im
            return gaussian((self.re * other.re + self.im * other.im) / d,
                            (self.im * other.re - self.re * other.im) / d)
        if isinstance(other, (int, Fraction)):
            return gaussian(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0) / self
        return NotImplemented

    def conjugate(self):
        return GaussianRational(self.re, -self.im)


Scalar = Union[Fraction, GaussianRational]


def gaussian(re, im=0) -> Scalar:
    """Return ``re + im*i``, collapsing to a ``Fraction`` when ``im == 0``."""
    im = Fraction(im)
    if not im:
        return Fraction(re)
    return GaussianRational(re, im)


def conj(x: Scalar) -> Scalar:
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else x


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def to_scalar(x, field: Field = Field.R) -> Scalar:
    """Coerce ints, strings, Fractions and Gaussian rationals to a field element.

    Floats and Python complex numbers are rejected: they are not exact.
    """
    if isinstance(x, GaussianRational):
        if x.im and field is not Field.C:
            raise ValueError(f"non-real scalar {x} in a real matrix")
        return gaussian(x.re, x.im)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, (float, complex)):
        raise TypeError(f"inexact scalar {x!r}")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def format_rational(q: Fraction) -> str:
    return str(q)


class Matrix:
    """Immutable dense matrix of exact scalars; ``0 x n`` and ``n x 0`` are allowed."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data: Iterable[Iterable], field: Field = Field.R,
                 cols: Optional[int] = None):
        field = Field(field)
        rows = tuple(tuple(to_scalar(x, field) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix data")
        self.rows = len(rows)
        self.cols = cols
        self.field = field
        self._data = rows

    @classmethod
    def _raw(cls, rows: tuple, cols: int, field: Field) -> "Matrix":
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m.field = field
        m._data = rows
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = Field.R) -> "Matrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols, Field(field))

    @classmethod
    def identity(cls, n: int, field: Field = Field.R) -> "Matrix":
        return cls._raw(tuple(tuple(Fraction(int(i == j)) for j in range(n))
                              for i in range(n)), n, Field(field))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int,
             field: Field = Field.R) -> "Matrix":
        data = [[Fraction(0)] * cols for _ in range(rows)]
        data[i][j] = Fraction(1)
        return cls._raw(tuple(map(tuple, data)), cols, Field(field))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence,
                     field: Field = Field.R) -> "Matrix":
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls([entries[r * cols:(r + 1) * cols] for r in range(rows)],
                   field, cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def entries(self) -> list:
        return [x for r in self._data for x in r]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix<{self.rows}x{self.cols},{self.field.value}>[{body}]"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def _join_field(self, other) -> Field:
        return Field.C if Field.C in (self.field, other.field) else Field.R

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(x + y for x, y in zip(a, b))
                                 for a, b in zip(self._data, other._data)),
                           self.cols, self._join_field(other))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(x - y for x, y in zip(a, b))
                                 for a, b in zip(self._data, other._data)),
                           self.cols, self._join_field(other))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self._data),
                           self.cols, self.field)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c, Field.C)
        field = Field.C if isinstance(c, GaussianRational) else self.field
        return Matrix._raw(tuple(tuple(c * x for x in r) for r in self._data),
                           self.cols, field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Fraction(0)
        out = []
        other_cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        for r in self._data:
            row = []
            for c in other_cols:
                s = zero
                for x, y in zip(r, c):
                    if x and y:
                        s = s + x * y
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(tuple(out), other.cols, self._join_field(other))

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)) if self.rows else
                           tuple(() for _ in range(self.cols)),
                           self.rows, self.field)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conj_transpose(self) -> "Matrix":
        t = self.transpose()
        if self.field is Field.R:
            return t
        return Matrix._raw(tuple(tuple(conj(x) for x in r) for r in t._data),
                           t.cols, t.field)

    def with_field(self, field: Field) -> "Matrix":
        field = Field(field)
        if field is Field.R and any(isinstance(x, GaussianRational)
                                    for x in self.entries()):
            raise ValueError("matrix has non-real entries")
        return Matrix._raw(self._data, self.cols, field)

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def rank(self) -> int:
        return rref(self)[2]


def block_diag(blocks: Sequence[Matrix], field: Field = Field.R) -> Matrix:
    """Block-diagonal concatenation; empty-shaped blocks still shift offsets."""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            data[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    if any(b.field is Field.C for b in blocks):
        field = Field.C
    return Matrix._raw(tuple(map(tuple, data)), cols, Field(field))


def _rref_in_place(rows: list[list], ncols: int) -> list[int]:
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow[:] = [x * inv if x else x for x in prow]
        nz = [(j, x) for j, x in enumerate(prow) if x and j >= c]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j, x in nz:
                    row[j] = row[j] - f * x
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank, computed exactly."""
    rows = m.tolist()
    pivots = _rref_in_place(rows, m.cols)
    reduced = Matrix._raw(tuple(map(tuple, rows)), m.cols, m.field)
    return reduced, pivots, len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def conj_transpose(m: Matrix) -> Matrix:
    return m.conj_transpose()


def nullspace_basis(m: Matrix) -> list[tuple]:
    """Basis of ``{x : m x = 0}`` as tuples, one per free column."""
    reduced, pivots, _ = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * m.cols
        x[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v = reduced[r, free]
            if v:
                x[pc] = -v
        basis.append(tuple(x))
    return basis


def solve_affine(m: Matrix, b: Sequence) -> Optional[tuple[tuple, list[tuple]]]:
    """Solve ``m x = b``; ``None`` when inconsistent.

    Returns a particular solution (free variables set to zero) and a
    nullspace basis.
    """
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = [list(r) + [to_scalar(x, Field.C)] for r, x in zip(m.tolist(), b)]
    pivots = _rref_in_place(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][m.cols]
    return tuple(x), nullspace_basis(m)


def mat_vec(m: Matrix, x: Sequence) -> tuple:
    zero = Fraction(0)
    out = []
    for r in range(m.rows):
        s = zero
        for a, y in zip(m.row(r), x):
            if a and y:
                s = s + a * y
        out.append(s)
    return tuple(out)


class EchelonSpan:
    """Incrementally grown span of vectors, kept in echelon form.

    ``add`` reports whether a vector was independent of everything added
    before, which is exactly the test of a greedy basis extension.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: list[tuple[int, list[tuple[int, Scalar]]]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        if len(v) != self.length:
            raise ValueError("vector length mismatch")
        for pivot, nz in self._rows:
            c = v[pivot]
            if c:
                for j, x in nz:
                    v[j] = v[j] - c * x
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        v = self.reduce(v)
        pivot = next((j for j, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        self._rows.append((pivot, [(j, x * inv) for j, x in enumerate(v) if x]))
        return True


def span_rank(vectors: Iterable[Sequence], length: int) -> int:
    span = EchelonSpan(length)
    for v in vectors:
        span.add(v)
    return len(span)
