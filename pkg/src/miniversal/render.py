"""Text renderings of a canonical representation with its star pattern."""

from __future__ import annotations

from fractions import Fraction

from .exact import GaussianRational, Scalar
from .quiver import Representation, StarPattern


def _plain(x: Scalar) -> str:
    return str(x)


def _latex_scalar(x: Scalar) -> str:
    if isinstance(x, GaussianRational):
        re = _latex_scalar(x.re) if x.re else ""
        im = "" if abs(x.im) == 1 else _latex_scalar(abs(x.im))
        sign = "-" if x.im < 0 else ("+" if re else "")
        return f"{re}{sign}{im}i"
    q = Fraction(x)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\tfrac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def ascii_pattern(a: Representation, p: StarPattern) -> str:
    """Each matrix with ``*`` at stars and ``.`` at structural zeros.

    A star sitting on a nonzero entry prints as ``value+*``.
    """
    stars = p.positions()
    out = []
    for ar in a.quiver.arrows:
        m = a.mats[ar.id]
        cells = []
        for i in range(m.rows):
            row = []
            for j in range(m.cols):
                x = m[i, j]
                if (ar.id, i, j) in stars:
                    row.append(f"{_plain(x)}+*" if x else "*")
                else:
                    row.append(_plain(x) if x else ".")
            cells.append(row)
        width = max((len(c) for r in cells for c in r), default=1)
        out.append(f"{ar.id} ({m.rows}x{m.cols}):")
        if not cells or not m.cols:
            out.append("  (empty)")
        for r in cells:
            out.append("  " + " ".join(c.rjust(width) for c in r))
    return "\n".join(out) + "\n"


def latex_pattern(a: Representation, p: StarPattern) -> str:
    """``bmatrix`` per arrow with ``\\lambda_k`` added at the k-th star (1-based)."""
    index = {(s.arrow, s.row, s.col): k + 1 for k, s in enumerate(p)}
    parts = []
    for ar in a.quiver.arrows:
        m = a.mats[ar.id]
        rows = []
        for i in range(m.rows):
            entries = []
            for j in range(m.cols):
                x = m[i, j]
                k = index.get((ar.id, i, j))
                if k is None:
                    entries.append(_latex_scalar(x))
                elif x:
                    entries.append(f"{_latex_scalar(x)}+\\lambda_{{{k}}}")
                else:
                    entries.append(f"\\lambda_{{{k}}}")
            rows.append(" & ".join(entries))
        if m.rows and m.cols:
            body = " \\\\\n  ".join(rows)
            parts.append(f"{ar.id} = \\begin{{bmatrix}}\n  {body}\n\\end{{bmatrix}}")
        else:
            parts.append(f"{ar.id} = 0_{{{m.rows}\\times {m.cols}}}")
    return "\\[\n" + ",\\quad\n".join(parts) + "\n\\]\n"
