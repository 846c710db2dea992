"""Closed-form star patterns of simplest miniversal deformations.

Each canonical matrix is cut into strips, one per direct summand.  For
every pair of summands a block kind is placed in one cell of the A-side
and/or B-side grid; the kind alone determines which entries of the cell
carry independent parameters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .canonical import (
    ContragredientStructure,
    JordanStructure,
    PencilStructure,
    Structure,
    Summand,
    SummandKind,
    build,
    eig_weight,
    pencil_summands,
    contragredient_summands,
    validate,
)
from .quiver import Star, StarPattern


class BlockKind(str, enum.Enum):
    H = "H"
    CAL_H = "calH"
    ZERO_ROW_TOP = "0^up"
    ZERO_ROW_BOTTOM = "0^down"
    ZERO_COL_FIRST = "0^left"
    ZERO_COL_LAST = "0^right"
    Z = "Z"
    Z_TRANSPOSE = "Z^T"
    ZERO = "0"


def stars_of_kind(kind: BlockKind, p: int, q: int) -> list[tuple[int, int]]:
    """Star coordinates inside a ``p x q`` block of the given kind, row-major.

    ``H``: first column when ``p <= q``, last row otherwise.  ``Z``: the first
    ``max(q - p, 0)`` entries of the first row; ``Z^T`` is its transpose
    (top entries of the first column).  The ``0^...`` kinds fill one whole
    edge row or column.
    """
    kind = BlockKind(kind)
    if p <= 0 or q <= 0 or kind is BlockKind.ZERO:
        return []
    if kind in (BlockKind.H, BlockKind.CAL_H):
        if p <= q:
            return [(i, 0) for i in range(p)]
        return [(p - 1, j) for j in range(q)]
    if kind is BlockKind.ZERO_ROW_TOP:
        return [(0, j) for j in range(q)]
    if kind is BlockKind.ZERO_ROW_BOTTOM:
        return [(p - 1, j) for j in range(q)]
    if kind is BlockKind.ZERO_COL_FIRST:
        return [(i, 0) for i in range(p)]
    if kind is BlockKind.ZERO_COL_LAST:
        return [(i, q - 1) for i in range(p)]
    if kind is BlockKind.Z:
        return [(0, j) for j in range(max(q - p, 0))]
    if kind is BlockKind.Z_TRANSPOSE:
        return [(i, 0) for i in range(max(p - q, 0))]
    raise ValueError(kind)


def count_of_kind(kind: BlockKind, p: int, q: int) -> int:
    """``len(stars_of_kind(kind, p, q))`` by formula."""
    kind = BlockKind(kind)
    if p <= 0 or q <= 0 or kind is BlockKind.ZERO:
        return 0
    if kind in (BlockKind.H, BlockKind.CAL_H):
        return min(p, q)
    if kind in (BlockKind.ZERO_ROW_TOP, BlockKind.ZERO_ROW_BOTTOM):
        return q
    if kind in (BlockKind.ZERO_COL_FIRST, BlockKind.ZERO_COL_LAST):
        return p
    if kind is BlockKind.Z:
        return max(q - p, 0)
    return max(p - q, 0)


def cal_h(row_sizes: Sequence[int], col_sizes: Sequence[int]) -> list[tuple[int, int]]:
    """Stars of a block matrix whose every ``p_i x q_j`` block is ``H``."""
    stars = []
    r0 = 0
    for p in row_sizes:
        c0 = 0
        for q in col_sizes:
            stars.extend((r0 + i, c0 + j) for i, j in stars_of_kind(BlockKind.H, p, q))
            c0 += q
        r0 += p
    return stars


@dataclass
class PatternLayout:
    """Block grid over one matrix: strip sizes and a kind for each nonzero cell."""

    arrow: str
    row_sizes: tuple[int, ...]
    col_sizes: tuple[int, ...]
    cells: dict[tuple[int, int], BlockKind]

    @property
    def shape(self) -> tuple[int, int]:
        return sum(self.row_sizes), sum(self.col_sizes)

    def kind(self, i: int, j: int) -> BlockKind:
        return self.cells.get((i, j), BlockKind.ZERO)

    def stars(self) -> list[tuple[int, int]]:
        """Block-row-major, then row-major inside each cell."""
        out = []
        r0 = 0
        for i, p in enumerate(self.row_sizes):
            c0 = 0
            for j, q in enumerate(self.col_sizes):
                kind = self.kind(i, j)
                out.extend((r0 + a, c0 + b) for a, b in stars_of_kind(kind, p, q))
                c0 += q
            r0 += p
        return out

    def star_count(self) -> int:
        return sum(count_of_kind(k, self.row_sizes[i], self.col_sizes[j])
                   for (i, j), k in self.cells.items())


def pattern_from_layouts(layouts: Iterable[PatternLayout]) -> StarPattern:
    return StarPattern(tuple(Star(lay.arrow, r, c) for lay in layouts for r, c in lay.stars()))


def _set(cells: dict, key: tuple[int, int], kind: BlockKind):
    if cells.get(key, kind) is not kind:
        raise AssertionError(f"conflicting block kinds at cell {key}")
    cells[key] = kind


# -- similarity ------------------------------------------------------------

def similarity_layout(s: JordanStructure) -> list[PatternLayout]:
    """``H`` between every two Jordan blocks with equal eigenvalue.

    Conjugate-pair blocks over R enter with their real size ``2r``.
    """
    validate(s)
    blocks = s.blocks()
    sizes = tuple(eig_weight(e) * k for e, k in blocks)
    cells = {}
    for i, (ei, _) in enumerate(blocks):
        for j, (ej, _) in enumerate(blocks):
            if ei == ej:
                cells[(i, j)] = BlockKind.H
    return [PatternLayout("A", sizes, sizes, cells)]


def similarity_pattern(s: JordanStructure) -> StarPattern:
    return pattern_from_layouts(similarity_layout(s))


# -- pencils ---------------------------------------------------------------

_FK, _IJ, _JI, _FKT = SummandKind.FK, SummandKind.IJ, SummandKind.JI, SummandKind.FKT


def _pencil_cells(si: Summand, sj: Summand, i: int, j: int, a_cells: dict, b_cells: dict):
    """Place the blocks for the summand pair ``i <= j`` (cells ``(i,j)`` and ``(j,i)``)."""
    ki, kj = si.kind, sj.kind
    both = [(i, j), (j, i)] if i != j else [(i, i)]
    if ki is _FK and kj is _FK:
        for cell in both:
            _set(b_cells, cell, BlockKind.Z)
    elif ki is _FK and kj is _IJ:
        _set(b_cells, (i, j), BlockKind.ZERO_ROW_TOP)
    elif ki is _FK and kj is _JI:
        _set(a_cells, (i, j), BlockKind.ZERO_ROW_BOTTOM)
    elif ki is _FK and kj is _FKT:
        _set(a_cells, (i, j), BlockKind.ZERO_COL_LAST)
        _set(b_cells, (i, j), BlockKind.ZERO_ROW_TOP)
    elif ki is _IJ and kj is _IJ:
        if si.eig == sj.eig:
            for cell in both:
                _set(b_cells, cell, BlockKind.H)
    elif ki is _IJ and kj is _JI:
        pass
    elif ki is _IJ and kj is _FKT:
        _set(b_cells, (i, j), BlockKind.ZERO_COL_FIRST)
    elif ki is _JI and kj is _JI:
        for cell in both:
            _set(a_cells, cell, BlockKind.H)
    elif ki is _JI and kj is _FKT:
        _set(a_cells, (i, j), BlockKind.ZERO_COL_LAST)
    elif ki is _FKT and kj is _FKT:
        for cell in both:
            _set(b_cells, cell, BlockKind.Z_TRANSPOSE)
    else:
        raise AssertionError(f"summands out of canonical order: {ki} before {kj}")


def pencil_layout(s: PencilStructure) -> list[PatternLayout]:
    validate(s)
    summands = [x[0] for x in pencil_summands(s)]
    rows = tuple(x.shape[0] for x in summands)
    cols = tuple(x.shape[1] for x in summands)
    a_cells, b_cells = {}, {}
    for i, si in enumerate(summands):
        for j in range(i, len(summands)):
            _pencil_cells(si, summands[j], i, j, a_cells, b_cells)
    return [PatternLayout("A", rows, cols, a_cells), PatternLayout("B", rows, cols, b_cells)]


def pencil_pattern(s: PencilStructure) -> StarPattern:
    return pattern_from_layouts(pencil_layout(s))


# -- contragredient pencils ------------------------------------------------

def _contra_cells(si: Summand, sj: Summand, i: int, j: int, a_cells: dict, b_cells: dict):
    ki, kj = si.kind, sj.kind
    both = [(i, j), (j, i)] if i != j else [(i, i)]
    H = BlockKind.H
    if ki is _IJ and kj is _IJ:
        # (I, J(lam)) with (I, J(mu)): H in B iff lam == mu
        if si.eig == sj.eig:
            for cell in both:
                _set(b_cells, cell, H)
    elif ki is _IJ:
        # (I, J(lam)) against (J,I), (F,G), (G,F): H in B iff lam == 0
        if not si.eig.value:
            for cell in both:
                _set(b_cells, cell, H)
    elif ki is _JI:
        # against (J,I), (F,G), (G,F): interchanging A and B gives the cases above
        for cell in both:
            _set(a_cells, cell, H)
    elif ki is SummandKind.FG and kj is SummandKind.FG:
        _set(a_cells, (i, j), H)
        if i != j:
            _set(b_cells, (j, i), H)
    elif ki is SummandKind.FG and kj is SummandKind.GF:
        _set(a_cells, (i, j), H)
        _set(b_cells, (j, i), H)
    elif ki is SummandKind.GF and kj is SummandKind.GF:
        _set(b_cells, (i, j), H)
        if i != j:
            _set(a_cells, (j, i), H)
    else:
        raise AssertionError(f"summands out of canonical order: {ki} before {kj}")


def contragredient_layout(s: ContragredientStructure) -> list[PatternLayout]:
    validate(s)
    summands = [x[0] for x in contragredient_summands(s)]
    rows = tuple(x.shape[0] for x in summands)
    cols = tuple(x.shape[1] for x in summands)
    a_cells, b_cells = {}, {}
    for i, si in enumerate(summands):
        for j in range(i, len(summands)):
            _contra_cells(si, summands[j], i, j, a_cells, b_cells)
    # B maps V -> U: its row strips are A's column strips and vice versa
    return [PatternLayout("A", rows, cols, a_cells), PatternLayout("B", cols, rows, b_cells)]


def contragredient_pattern(s: ContragredientStructure) -> StarPattern:
    return pattern_from_layouts(contragredient_layout(s))


def layout(s: Structure) -> list[PatternLayout]:
    if isinstance(s, JordanStructure):
        return similarity_layout(s)
    if isinstance(s, PencilStructure):
        return pencil_layout(s)
    if isinstance(s, ContragredientStructure):
        return contragredient_layout(s)
    raise TypeError(f"not a canonical structure: {s!r}")


def pattern(s: Structure) -> StarPattern:
    return pattern_from_layouts(layout(s))


def star_count(s: Structure) -> int:
    """Number of parameters, tallied from block sizes alone."""
    return sum(lay.star_count() for lay in layout(s))


def canonical_and_pattern(s: Structure):
    return build(s), pattern(s)
