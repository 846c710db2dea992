"""Quiver representations, orbit tangent spaces and the transversality test.

A direction in the representation space is flattened arrow by arrow, in the
order the arrows are listed on the quiver, each matrix row-major.  A vertex
tuple ``C = (C_1, ..., C_t)`` is flattened vertex by vertex, row-major.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .exact import (
    EchelonSpan,
    Field,
    Matrix,
    Scalar,
    conj,
    nullspace_basis,
    solve_affine,
    to_scalar,
)


class PatternError(ValueError):
    """A star pattern does not fit a representation or is not miniversal for it."""


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate arrow ids in {ids}")
        for a in self.arrows:
            if not (0 <= a.source < self.vertex_count and 0 <= a.target < self.vertex_count):
                raise ValueError(f"arrow {a.id} has an endpoint outside [0, {self.vertex_count})")

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    @classmethod
    def loop(cls) -> "Quiver":
        """One vertex, one loop: a square matrix under similarity."""
        return cls(1, (Arrow("A", 0, 0),))

    @classmethod
    def double_arrow(cls) -> "Quiver":
        """``A, B: U -> V``: matrix pencils under strict equivalence."""
        return cls(2, (Arrow("A", 0, 1), Arrow("B", 0, 1)))

    @classmethod
    def counter_arrow(cls) -> "Quiver":
        """``A: U -> V``, ``B: V -> U``: contragredient pencils."""
        return cls(2, (Arrow("A", 0, 1), Arrow("B", 1, 0)))


@dataclass(frozen=True)
class Star:
    arrow: str
    row: int
    col: int


@dataclass(frozen=True)
class StarPattern:
    stars: tuple[Star, ...] = ()

    def __post_init__(self):
        if len(set(self.stars)) != len(self.stars):
            raise PatternError("star positions must be distinct")

    def __len__(self):
        return len(self.stars)

    def __iter__(self):
        return iter(self.stars)

    @classmethod
    def of(cls, positions: Iterable) -> "StarPattern":
        return cls(tuple(p if isinstance(p, Star) else Star(*p) for p in positions))

    def positions(self) -> set[tuple[str, int, int]]:
        return {(s.arrow, s.row, s.col) for s in self.stars}


@dataclass
class Representation:
    """A matrix representation: one matrix per arrow, shaped ``n_target x n_source``.

    ``summands`` optionally records how a canonical representation was
    assembled; the pattern generators read strip offsets from it.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    mats: dict[str, Matrix]
    field: Field = Field.R
    summands: tuple = dc_field(default=(), compare=False)

    def __post_init__(self):
        self.dims = tuple(self.dims)
        self.field = Field(self.field)
        if len(self.dims) != self.quiver.vertex_count:
            raise ValueError("dimension vector length differs from vertex count")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be non-negative")
        for a in self.quiver.arrows:
            m = self.mats.get(a.id)
            if m is None:
                raise ValueError(f"missing matrix for arrow {a.id}")
            expected = (self.dims[a.target], self.dims[a.source])
            if m.shape != expected:
                raise ValueError(f"arrow {a.id}: matrix is {m.shape}, expected {expected}")
            if m.field is not self.field:
                self.mats[a.id] = m.with_field(self.field)

    def __getitem__(self, arrow_id: str) -> Matrix:
        return self.mats[arrow_id]

    def shape_of(self, arrow_id: str) -> tuple[int, int]:
        a = self.quiver.arrow(arrow_id)
        return self.dims[a.target], self.dims[a.source]

    def __add__(self, other: "Representation") -> "Representation":
        return Representation(self.quiver, self.dims,
                              {k: self.mats[k] + other.mats[k] for k in self.mats},
                              self.field)


VertexTuple = tuple  # tuple of square Matrix, one per vertex


def zero_tuple(dims: Sequence[int], field: Field = Field.R) -> VertexTuple:
    return tuple(Matrix.zeros(n, n, field) for n in dims)


def identity_tuple(dims: Sequence[int], field: Field = Field.R) -> VertexTuple:
    return tuple(Matrix.identity(n, field) for n in dims)


def ambient_dim(a: Representation) -> int:
    return sum(a.dims[ar.target] * a.dims[ar.source] for ar in a.quiver.arrows)


def group_dim(a: Representation) -> int:
    return sum(n * n for n in a.dims)


def entry_coordinates(a: Representation) -> list[tuple[str, int, int]]:
    """Every ``(arrow, row, col)`` in vectorization order."""
    coords = []
    for ar in a.quiver.arrows:
        r, c = a.shape_of(ar.id)
        coords.extend((ar.id, i, j) for i in range(r) for j in range(c))
    return coords


def _offsets(a: Representation) -> dict[str, int]:
    off, pos = {}, 0
    for ar in a.quiver.arrows:
        off[ar.id] = pos
        r, c = a.shape_of(ar.id)
        pos += r * c
    return off


def vectorize(a: Representation) -> list[Scalar]:
    out = []
    for ar in a.quiver.arrows:
        out.extend(a.mats[ar.id].entries())
    return out


def from_vector(template: Representation, vec: Sequence) -> Representation:
    mats, pos = {}, 0
    for ar in template.quiver.arrows:
        r, c = template.shape_of(ar.id)
        mats[ar.id] = Matrix.from_entries(r, c, list(vec[pos:pos + r * c]), template.field)
        pos += r * c
    return Representation(template.quiver, template.dims, mats, template.field)


def tuple_from_vector(dims: Sequence[int], vec: Sequence,
                      field: Field = Field.R) -> VertexTuple:
    out, pos = [], 0
    for n in dims:
        out.append(Matrix.from_entries(n, n, list(vec[pos:pos + n * n]), field))
        pos += n * n
    return tuple(out)


def bracket(c: VertexTuple, a: Representation) -> Representation:
    """``[C, A]_alpha = C_target A_alpha - A_alpha C_source`` for every arrow."""
    if len(c) != a.quiver.vertex_count:
        raise ValueError("vertex tuple length differs from vertex count")
    for ci, n in zip(c, a.dims):
        if ci.shape != (n, n):
            raise ValueError(f"vertex matrix {ci.shape} does not match dimension {n}")
    mats = {}
    for ar in a.quiver.arrows:
        m = a.mats[ar.id]
        mats[ar.id] = c[ar.target] @ m - m @ c[ar.source]
    return Representation(a.quiver, a.dims, mats, a.field)


def tangent_columns(a: Representation) -> list[list[Scalar]]:
    """Vectorized ``[E, A]`` for every unit vertex tuple ``E``, in tuple order."""
    length = ambient_dim(a)
    off = _offsets(a)
    zero = Fraction(0)
    columns = []
    for v, n in enumerate(a.dims):
        for k in range(n):
            for l in range(n):
                col = [zero] * length
                for ar in a.quiver.arrows:
                    m = a.mats[ar.id]
                    base = off[ar.id]
                    rows, cols = m.shape
                    if ar.target == v:
                        # (E_kl A)[k, j] = A[l, j]
                        for j in range(cols):
                            x = m[l, j]
                            if x:
                                col[base + k * cols + j] += x
                    if ar.source == v:
                        # (A E_kl)[i, l] = A[i, k]
                        for i in range(rows):
                            x = m[i, k]
                            if x:
                                col[base + i * cols + l] -= x
                columns.append(col)
    return columns


def tangent_map_matrix(a: Representation) -> Matrix:
    """Matrix of ``C -> [C, A]``; its rank is the dimension of the tangent space."""
    cols = tangent_columns(a)
    length = ambient_dim(a)
    rows = [[col[i] for col in cols] for i in range(length)]
    return Matrix(rows, a.field, cols=len(cols))


def tangent_rank(a: Representation) -> int:
    span = EchelonSpan(ambient_dim(a))
    for col in tangent_columns(a):
        span.add(col)
    return len(span)


def codimension(a: Representation) -> int:
    return ambient_dim(a) - tangent_rank(a)


@dataclass(frozen=True)
class VerificationReport:
    ambient_dim: int
    tangent_rank: int
    pattern_size: int
    combined_rank: int
    is_direct_sum: bool
    is_miniversal: bool

    @property
    def codimension(self) -> int:
        return self.ambient_dim - self.tangent_rank

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "tangent_rank": self.tangent_rank,
            "pattern_size": self.pattern_size,
            "combined_rank": self.combined_rank,
            "is_direct_sum": self.is_direct_sum,
            "is_miniversal": self.is_miniversal,
        }


def _star_index(a: Representation, offsets: dict[str, int], s: Star) -> int:
    try:
        r, c = a.shape_of(s.arrow)
    except KeyError:
        raise PatternError(f"star {(s.arrow, s.row, s.col)} names an unknown arrow") from None
    if not (0 <= s.row < r and 0 <= s.col < c):
        raise PatternError(
            f"star {(s.arrow, s.row, s.col)} is outside the {r}x{c} matrix of arrow {s.arrow}")
    return offsets[s.arrow] + s.row * c + s.col


def _unit(length: int, i: int) -> list:
    v = [Fraction(0)] * length
    v[i] = Fraction(1)
    return v


def verify_transversal(a: Representation, p: StarPattern) -> VerificationReport:
    """Check that the star directions and the tangent space split the whole space."""
    length = ambient_dim(a)
    offsets = _offsets(a)
    indices = [_star_index(a, offsets, s) for s in p]
    span = EchelonSpan(length)
    for col in tangent_columns(a):
        span.add(col)
    t_rank = len(span)
    for i in indices:
        span.add(_unit(length, i))
    combined = len(span)
    direct = combined == t_rank + len(indices)
    return VerificationReport(
        ambient_dim=length,
        tangent_rank=t_rank,
        pattern_size=len(indices),
        combined_rank=combined,
        is_direct_sum=direct,
        is_miniversal=direct and t_rank + len(indices) == length,
    )


def _order_row_major(a):
    return entry_coordinates(a)


def _order_column_major(a):
    coords = []
    for ar in a.quiver.arrows:
        r, c = a.shape_of(ar.id)
        coords.extend((ar.id, i, j) for j in range(c) for i in range(r))
    return coords


def _order_reversed(a):
    return entry_coordinates(a)[::-1]


def _order_interleaved(a):
    # position-major across arrows: (A,0,0), (B,0,0), (A,0,1), ...
    per_arrow = []
    for ar in a.quiver.arrows:
        r, c = a.shape_of(ar.id)
        per_arrow.append([(ar.id, i, j) for i in range(r) for j in range(c)])
    coords = []
    for k in range(max((len(x) for x in per_arrow), default=0)):
        coords.extend(x[k] for x in per_arrow if k < len(x))
    return coords


def _order_shuffled(a, seed=0):
    coords = entry_coordinates(a)
    random.Random(seed).shuffle(coords)
    return coords


ENTRY_ORDERS: dict[str, Callable[[Representation], list]] = {
    "row-major": _order_row_major,
    "column-major": _order_column_major,
    "reversed": _order_reversed,
    "interleaved": _order_interleaved,
    "shuffled": _order_shuffled,
}


def entry_order(a: Representation, name: str = "row-major") -> list[tuple[str, int, int]]:
    try:
        return ENTRY_ORDERS[name](a)
    except KeyError:
        raise ValueError(f"unknown entry order {name!r}; choose from {sorted(ENTRY_ORDERS)}") from None


def greedy_simplest_miniversal(a: Representation,
                               order: Optional[Sequence[tuple[str, int, int]]] = None
                               ) -> StarPattern:
    """Keep each unit entry that is independent of the tangent space and earlier picks."""
    if order is None:
        order = entry_coordinates(a)
    order = [tuple(x) for x in order]
    if sorted(order) != sorted(entry_coordinates(a)):
        raise ValueError("entry order must list every (arrow, row, col) exactly once")
    length = ambient_dim(a)
    offsets = _offsets(a)
    span = EchelonSpan(length)
    for col in tangent_columns(a):
        span.add(col)
    kept = []
    for coord in order:
        star = Star(*coord)
        if span.add(_unit(length, _star_index(a, offsets, star))):
            kept.append(star)
        if len(span) == length:
            break
    return StarPattern(tuple(kept))


def inner_product(x: Representation, y: Representation) -> Scalar:
    """``<X, Y> = sum over arrows of tr(X_alpha Y_alpha^*)``."""
    s = Fraction(0)
    for u, v in zip(vectorize(x), vectorize(y)):
        if u and v:
            s = s + u * conj(v)
    return s


def orthogonal_miniversal(a: Representation) -> list[Representation]:
    """Basis of the orthogonal complement of the tangent space.

    Solves, for unknown ``X``, the vertex equations
    ``sum_{e(alpha)=i} X_alpha A_alpha^* = sum_{b(alpha)=i} A_alpha^* X_alpha``.
    """
    length = ambient_dim(a)
    offsets = _offsets(a)
    adj = {ar.id: a.mats[ar.id].conj_transpose() for ar in a.quiver.arrows}
    zero = Fraction(0)
    equations = []
    for v, n in enumerate(a.dims):
        # one equation per entry (k, l) of the n x n vertex matrix
        for k in range(n):
            for l in range(n):
                eq = [zero] * length
                for ar in a.quiver.arrows:
                    rows, cols = a.shape_of(ar.id)
                    base = offsets[ar.id]
                    adj_m = adj[ar.id]
                    if ar.target == v:
                        # (X A^*)[k, l] = sum_j X[k, j] A^*[j, l]
                        for j in range(cols):
                            y = adj_m[j, l]
                            if y:
                                eq[base + k * cols + j] += y
                    if ar.source == v:
                        # (A^* X)[k, l] = sum_i A^*[k, i] X[i, l]
                        for i in range(rows):
                            y = adj_m[k, i]
                            if y:
                                eq[base + i * cols + l] -= y
                equations.append(eq)
    system = Matrix(equations, a.field, cols=length)
    return [from_vector(a, vec) for vec in nullspace_basis(system)]


def pattern_direction(a: Representation, p: StarPattern, coeffs: Sequence) -> Representation:
    """The direction with ``coeffs[k]`` at the ``k``-th star and zeros elsewhere."""
    length = ambient_dim(a)
    offsets = _offsets(a)
    vec = [Fraction(0)] * length
    for s, c in zip(p, coeffs):
        vec[_star_index(a, offsets, s)] = to_scalar(c, Field.C)
    return from_vector(a, vec)


def decompose(a: Representation, p: StarPattern, d: Representation,
              variable_order: Optional[Sequence[int]] = None
              ) -> tuple[list[Scalar], VertexTuple]:
    """Split ``d`` as ``P(coeffs) + [witness, a]``.

    ``variable_order`` permutes the unknowns (witness entries, then
    coefficients) before elimination; the coefficients do not depend on it.
    """
    report = verify_transversal(a, p)
    if not report.is_miniversal:
        raise PatternError(f"pattern is not miniversal for this representation: {report}")
    if d.dims != a.dims or d.quiver != a.quiver:
        raise ValueError("direction does not live in the representation space")
    length = ambient_dim(a)
    offsets = _offsets(a)
    columns = tangent_columns(a)
    n_witness = len(columns)
    for s in p:
        columns.append(_unit(length, _star_index(a, offsets, s)))
    n_vars = len(columns)
    perm = list(range(n_vars)) if variable_order is None else list(variable_order)
    if sorted(perm) != list(range(n_vars)):
        raise ValueError("variable_order must be a permutation of the unknowns")
    system = Matrix([[columns[perm[j]][i] for j in range(n_vars)] for i in range(length)],
                    Field.C if d.field is Field.C else a.field, cols=n_vars)
    solved = solve_affine(system, vectorize(d))
    if solved is None:
        raise PatternError("direction is not reachable; the pattern is not transversal")
    x_perm, _ = solved
    x = [Fraction(0)] * n_vars
    for j, v in enumerate(x_perm):
        x[perm[j]] = v
    witness = tuple_from_vector(a.dims, x[:n_witness], a.field)
    return list(x[n_witness:]), witness
