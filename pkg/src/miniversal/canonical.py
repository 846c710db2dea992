"""Canonical forms for the three classification problems.

* square matrices under similarity (loop quiver): direct sums of Jordan
  blocks, with real 2x2-celled blocks for conjugate pairs over R;
* pencils ``(A, B)`` under strict equivalence (two parallel arrows):
  Kronecker summands ``(F_p, K_p)``, ``(I, J(lam))``, ``(J, I)``,
  ``(F_q^T, K_q^T)``;
* contragredient pencils ``A: U -> V``, ``B: V -> U``: summands
  ``(I, C)``, ``(I, J)``, ``(J, I)``, ``(F, G)``, ``(G, F)`` with ``G = K^T``.

Builders return :class:`~miniversal.quiver.Representation` objects whose
``summands`` record the kind, size, eigenvalue and block shape of each
direct summand, in assembly order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import Field, Matrix, Scalar, block_diag, gaussian, to_scalar
from .quiver import Quiver, Representation


class ValidationError(ValueError):
    """A canonical structure violates one of its invariants."""


@dataclass(frozen=True)
class ComplexEig:
    """Eigenvalue over C."""

    value: Scalar

    def __post_init__(self):
        object.__setattr__(self, "value", to_scalar(self.value, Field.C))


@dataclass(frozen=True)
class RealEig:
    """Real eigenvalue over R."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class ComplexPair:
    """Conjugate pair ``a +- b i`` over R, stored once with ``b > 0``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def value(self) -> Scalar:
        return gaussian(self.a, self.b)


EigSpec = Union[ComplexEig, RealEig, ComplexPair]


def eig_weight(eig: EigSpec) -> int:
    """Matrix rows per unit of block size: 2 for a real conjugate-pair block."""
    return 2 if isinstance(eig, ComplexPair) else 1


def eig_is_zero(eig: EigSpec) -> bool:
    return not isinstance(eig, ComplexPair) and not eig.value


@dataclass(frozen=True)
class JordanStructure:
    field: Field
    eigenblocks: tuple[tuple[EigSpec, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "field", Field(self.field))
        object.__setattr__(self, "eigenblocks",
                           tuple((e, tuple(p)) for e, p in self.eigenblocks))

    @property
    def size(self) -> int:
        return sum(eig_weight(e) * sum(p) for e, p in self.eigenblocks)

    def blocks(self) -> list[tuple[EigSpec, int]]:
        """``(eigenvalue, block size)`` in assembly order."""
        return [(e, s) for e, part in self.eigenblocks for s in part]


@dataclass(frozen=True)
class PencilStructure:
    field: Field
    left_minimal: tuple[int, ...] = ()
    finite_part: Optional[JordanStructure] = None
    infinite_part: tuple[int, ...] = ()
    right_minimal: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "field", Field(self.field))
        if self.finite_part is None:
            object.__setattr__(self, "finite_part", JordanStructure(self.field))
        for name in ("left_minimal", "infinite_part", "right_minimal"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


@dataclass(frozen=True)
class ContragredientStructure:
    field: Field
    nonsingular_part: Optional[JordanStructure] = None
    type1: tuple[int, ...] = ()
    type2: tuple[int, ...] = ()
    type3: tuple[int, ...] = ()
    type4: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "field", Field(self.field))
        if self.nonsingular_part is None:
            object.__setattr__(self, "nonsingular_part", JordanStructure(self.field))
        for name in ("type1", "type2", "type3", "type4"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


Structure = Union[JordanStructure, PencilStructure, ContragredientStructure]


class SummandKind(str, enum.Enum):
    JORDAN = "J(lam)"          # a Jordan block under similarity
    FK = "(F,K)"               # pencil (F_p, K_p)
    IJ = "(I,J)"               # (I, J(lam)) in a pencil or contragredient pair
    JI = "(J,I)"               # (J, I)
    FKT = "(F^T,K^T)"          # pencil (F_q^T, K_q^T)
    FG = "(F,G)"               # contragredient (F_r, G_r)
    GF = "(G,F)"               # contragredient (G_r, F_r)


@dataclass(frozen=True)
class Summand:
    kind: SummandKind
    size: int
    eig: Optional[EigSpec]
    shape: tuple[int, int]      # shape of the summand's block in the first matrix
    group: str = dc_field(default="")


def _check_partition(part: Sequence[int], name: str, descending: bool = True):
    if any((not isinstance(x, int)) or isinstance(x, bool) or x < 1 for x in part):
        raise ValidationError(f"{name}: block sizes must be integers >= 1, got {list(part)}")
    pairs = zip(part, part[1:])
    if descending and any(a < b for a, b in pairs):
        raise ValidationError(f"{name}: sizes must be weakly decreasing, got {list(part)}")
    if not descending and any(a > b for a, b in pairs):
        raise ValidationError(f"{name}: sizes must be weakly increasing, got {list(part)}")


def validate_jordan(s: JordanStructure, name: str = "eigenblocks"):
    seen = []
    for eig, part in s.eigenblocks:
        if s.field is Field.C:
            if not isinstance(eig, ComplexEig):
                raise ValidationError(f"{name}: over C every eigenvalue must be ComplexEig, got {eig}")
        else:
            if isinstance(eig, ComplexEig):
                raise ValidationError(f"{name}: over R use RealEig or ComplexPair, got {eig}")
            if isinstance(eig, ComplexPair) and eig.b <= 0:
                raise ValidationError(
                    f"{name}: ComplexPair needs b > 0 (b = 0 is a RealEig), got {eig}")
        if not part:
            raise ValidationError(f"{name}: empty partition for eigenvalue {eig}")
        _check_partition(part, f"{name} partition for {eig}")
        if eig in seen:
            raise ValidationError(f"{name}: eigenvalues must be pairwise distinct, {eig} repeats")
        seen.append(eig)


def validate(s: Structure):
    """Raise :class:`ValidationError` naming the first violated invariant."""
    if isinstance(s, JordanStructure):
        validate_jordan(s)
    elif isinstance(s, PencilStructure):
        if s.finite_part.field is not s.field:
            raise ValidationError("finite_part: field tag differs from the pencil's")
        validate_jordan(s.finite_part, "finite_part")
        _check_partition(s.left_minimal, "left_minimal", descending=False)
        _check_partition(s.infinite_part, "infinite_part")
        _check_partition(s.right_minimal, "right_minimal")
    elif isinstance(s, ContragredientStructure):
        ns = s.nonsingular_part
        if ns.field is not s.field:
            raise ValidationError("nonsingular_part: field tag differs from the pair's")
        validate_jordan(ns, "nonsingular_part")
        for eig, _ in ns.eigenblocks:
            if eig_is_zero(eig):
                raise ValidationError("nonsingular_part: eigenvalues must be nonzero")
        for name in ("type1", "type2", "type3", "type4"):
            _check_partition(getattr(s, name), name)
    else:
        raise TypeError(f"not a canonical structure: {s!r}")


def jordan_block(field: Field, eig: EigSpec, r: int) -> Matrix:
    """``J_r(lam)``, or the real ``2r x 2r`` block with ``T_ab`` cells for a pair."""
    if r < 1:
        raise ValueError("block size must be >= 1")
    field = Field(field)
    if isinstance(eig, ComplexPair):
        n = 2 * r
        data = [[Fraction(0)] * n for _ in range(n)]
        for k in range(r):
            i = 2 * k
            data[i][i] = data[i + 1][i + 1] = eig.a
            data[i][i + 1] = eig.b
            data[i + 1][i] = -eig.b
            if k + 1 < r:
                data[i][i + 2] = data[i + 1][i + 3] = Fraction(1)
        return Matrix(data, field)
    lam = eig.value
    data = [[lam if i == j else Fraction(int(j == i + 1)) for j in range(r)]
            for i in range(r)]
    return Matrix(data, field)


def nilpotent_block(field: Field, r: int) -> Matrix:
    return jordan_block(field, ComplexEig(0) if Field(field) is Field.C else RealEig(0), r)


def f_block(r: int, field: Field = Field.R) -> Matrix:
    """``F_r``: ``r x (r-1)``, identity on top of a zero row."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return Matrix([[int(i == j) for j in range(r - 1)] for i in range(r)], field, cols=r - 1)


def k_block(r: int, field: Field = Field.R) -> Matrix:
    """``K_r``: ``r x (r-1)``, a zero row on top of the identity."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return Matrix([[int(i == j + 1) for j in range(r - 1)] for i in range(r)], field, cols=r - 1)


def g_block(r: int, field: Field = Field.R) -> Matrix:
    """``G_r = K_r^T``: ``(r-1) x r``."""
    return k_block(r, field).transpose()


def _jordan_blocks(s: JordanStructure):
    return [(jordan_block(s.field, e, k), e, k) for e, k in s.blocks()]


def build_jordan(s: JordanStructure) -> Representation:
    validate(s)
    blocks = _jordan_blocks(s)
    a = block_diag([b for b, _, _ in blocks], s.field)
    summands = tuple(Summand(SummandKind.JORDAN, k, e, b.shape) for b, e, k in blocks)
    return Representation(Quiver.loop(), (a.rows,), {"A": a}, s.field, summands)


def pencil_summands(s: PencilStructure) -> list[tuple[Summand, Matrix, Matrix]]:
    f = s.field
    out = []
    for p in s.left_minimal:
        out.append((Summand(SummandKind.FK, p, None, (p, p - 1), "left"),
                    f_block(p, f), k_block(p, f)))
    for b, e, k in _jordan_blocks(s.finite_part):
        out.append((Summand(SummandKind.IJ, k, e, b.shape, "finite"),
                    Matrix.identity(b.rows, f), b))
    zero = ComplexEig(0) if f is Field.C else RealEig(0)
    for k in s.infinite_part:
        out.append((Summand(SummandKind.JI, k, zero, (k, k), "infinite"),
                    nilpotent_block(f, k), Matrix.identity(k, f)))
    for q in s.right_minimal:
        out.append((Summand(SummandKind.FKT, q, None, (q - 1, q), "right"),
                    f_block(q, f).transpose(), k_block(q, f).transpose()))
    return out


def build_pencil(s: PencilStructure) -> Representation:
    """``(A, B)`` block-diagonal in the order (F,K), (I,C), (D,I), (F^T,K^T)."""
    validate(s)
    parts = pencil_summands(s)
    a = block_diag([x[1] for x in parts], s.field)
    b = block_diag([x[2] for x in parts], s.field)
    # U = columns (vertex 0), V = rows (vertex 1)
    return Representation(Quiver.double_arrow(), (a.cols, a.rows), {"A": a, "B": b},
                          s.field, tuple(x[0] for x in parts))


def contragredient_summands(s: ContragredientStructure) -> list[tuple[Summand, Matrix, Matrix]]:
    f = s.field
    zero = ComplexEig(0) if f is Field.C else RealEig(0)
    out = []
    for b, e, k in _jordan_blocks(s.nonsingular_part):
        out.append((Summand(SummandKind.IJ, k, e, b.shape, "nonsingular"),
                    Matrix.identity(b.rows, f), b))
    for k in s.type1:
        out.append((Summand(SummandKind.IJ, k, zero, (k, k), "type1"),
                    Matrix.identity(k, f), nilpotent_block(f, k)))
    for k in s.type2:
        out.append((Summand(SummandKind.JI, k, zero, (k, k), "type2"),
                    nilpotent_block(f, k), Matrix.identity(k, f)))
    for r in s.type3:
        out.append((Summand(SummandKind.FG, r, None, (r, r - 1), "type3"),
                    f_block(r, f), g_block(r, f)))
    for r in s.type4:
        out.append((Summand(SummandKind.GF, r, None, (r - 1, r), "type4"),
                    g_block(r, f), f_block(r, f)))
    return out


def build_contragredient(s: ContragredientStructure) -> Representation:
    """``A: U -> V`` (``m x n``) and ``B: V -> U`` (``n x m``), block-diagonal."""
    validate(s)
    parts = contragredient_summands(s)
    a = block_diag([x[1] for x in parts], s.field)
    b = block_diag([x[2] for x in parts], s.field)
    return Representation(Quiver.counter_arrow(), (a.cols, a.rows), {"A": a, "B": b},
                          s.field, tuple(x[0] for x in parts))


def build(s: Structure) -> Representation:
    if isinstance(s, JordanStructure):
        return build_jordan(s)
    if isinstance(s, PencilStructure):
        return build_pencil(s)
    if isinstance(s, ContragredientStructure):
        return build_contragredient(s)
    raise TypeError(f"not a canonical structure: {s!r}")


def problem_of(s: Structure) -> str:
    return {JordanStructure: "similarity", PencilStructure: "pencil",
            ContragredientStructure: "contragredient"}[type(s)]
