"""JSON encodings of scalars, matrices, structures and pattern documents.

Rationals are strings in lowest terms (``"3"``, ``"-1/2"``); complex-field
scalars are ``{"re": ..., "im": ...}`` objects; matrices are
``{"rows": r, "cols": c, "entries": [...row-major...]}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .canonical import (
    ComplexEig,
    ComplexPair,
    ContragredientStructure,
    EigSpec,
    JordanStructure,
    PencilStructure,
    RealEig,
    Structure,
    problem_of,
)
from .exact import Field, GaussianRational, Matrix, Scalar, gaussian, imag_part, real_part
from .quiver import Arrow, Quiver, Representation, StarPattern, VerificationReport


class ParseError(ValueError):
    """Input is not well-formed JSON for the expected document."""


def rational_to_json(q: Fraction) -> str:
    return str(Fraction(q))


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise ParseError(f"expected a rational as a string or integer, got {obj!r}")
    try:
        return Fraction(obj)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational {obj!r}") from None


def scalar_to_json(x: Scalar, field: Field):
    if Field(field) is Field.C:
        return {"re": rational_to_json(real_part(x)), "im": rational_to_json(imag_part(x))}
    return rational_to_json(x)


def scalar_from_json(obj, field: Field) -> Scalar:
    if isinstance(obj, dict):
        if set(obj) - {"re", "im"}:
            raise ParseError(f"complex scalar has unexpected keys: {sorted(obj)}")
        value = gaussian(rational_from_json(obj.get("re", "0")),
                         rational_from_json(obj.get("im", "0")))
        if isinstance(value, GaussianRational) and Field(field) is Field.R:
            raise ParseError(f"non-real entry {obj} in a real matrix")
        return value
    return rational_from_json(obj)


def matrix_to_json(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [scalar_to_json(x, m.field) for x in m.entries()]}


def matrix_from_json(obj, field: Field) -> Matrix:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise ParseError("matrix must be an object with rows, cols and entries")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 0 and cols >= 0):
        raise ParseError("matrix rows/cols must be non-negative integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ParseError(f"matrix needs {rows * cols} entries")
    return Matrix.from_entries(rows, cols, [scalar_from_json(e, field) for e in entries], field)


def field_from_json(obj) -> Field:
    try:
        return Field(obj)
    except ValueError:
        raise ParseError(f"field must be \"R\" or \"C\", got {obj!r}") from None


# -- structures ---------------------------------------------------------------

def eig_to_json(eig: EigSpec):
    if isinstance(eig, ComplexPair):
        return {"re": rational_to_json(eig.a), "im": rational_to_json(eig.b)}
    if isinstance(eig, ComplexEig) and isinstance(eig.value, GaussianRational):
        return {"re": rational_to_json(eig.value.re), "im": rational_to_json(eig.value.im)}
    return rational_to_json(eig.value)


def eig_from_json(obj, field: Field) -> EigSpec:
    if field is Field.C:
        return ComplexEig(scalar_from_json(obj, Field.C))
    if isinstance(obj, dict):
        if set(obj) - {"re", "im"}:
            raise ParseError(f"eigenvalue has unexpected keys: {sorted(obj)}")
        # b <= 0 is left for validation to reject with a named invariant
        return ComplexPair(rational_from_json(obj.get("re", "0")),
                           rational_from_json(obj.get("im", "0")))
    return RealEig(rational_from_json(obj))


def _sizes(obj, name) -> tuple[int, ...]:
    if not isinstance(obj, list) or any(isinstance(x, bool) or not isinstance(x, int)
                                        for x in obj):
        raise ParseError(f"{name} must be a list of integers")
    return tuple(obj)


def _eigenblocks_to_json(s: JordanStructure) -> list:
    return [{"eigenvalue": eig_to_json(e), "partition": list(p)} for e, p in s.eigenblocks]


def _eigenblocks_from_json(obj, field, name) -> JordanStructure:
    if not isinstance(obj, list):
        raise ParseError(f"{name} must be a list of eigenblocks")
    blocks = []
    for item in obj:
        if not isinstance(item, dict) or set(item) != {"eigenvalue", "partition"}:
            raise ParseError(f"{name}: each eigenblock needs exactly eigenvalue and partition")
        blocks.append((eig_from_json(item["eigenvalue"], field),
                       _sizes(item["partition"], f"{name} partition")))
    return JordanStructure(field, tuple(blocks))


_KEYS = {
    "similarity": {"eigenblocks"},
    "pencil": {"left_minimal", "finite_part", "infinite_part", "right_minimal"},
    "contragredient": {"nonsingular_part", "type1", "type2", "type3", "type4"},
}


def structure_to_json(s: Structure) -> dict:
    if isinstance(s, JordanStructure):
        return {"eigenblocks": _eigenblocks_to_json(s)}
    if isinstance(s, PencilStructure):
        return {"left_minimal": list(s.left_minimal),
                "finite_part": _eigenblocks_to_json(s.finite_part),
                "infinite_part": list(s.infinite_part),
                "right_minimal": list(s.right_minimal)}
    return {"nonsingular_part": _eigenblocks_to_json(s.nonsingular_part),
            "type1": list(s.type1), "type2": list(s.type2),
            "type3": list(s.type3), "type4": list(s.type4)}


def structure_from_json(problem: str, field: Field, obj) -> Structure:
    if problem not in _KEYS:
        raise ParseError(f"problem must be one of {sorted(_KEYS)}, got {problem!r}")
    if not isinstance(obj, dict):
        raise ParseError("structure must be an object")
    extra = set(obj) - _KEYS[problem]
    if extra:
        raise ParseError(f"unexpected keys for a {problem} structure: {sorted(extra)}")
    if problem == "similarity":
        return _eigenblocks_from_json(obj.get("eigenblocks", []), field, "eigenblocks")
    if problem == "pencil":
        return PencilStructure(
            field,
            left_minimal=_sizes(obj.get("left_minimal", []), "left_minimal"),
            finite_part=_eigenblocks_from_json(obj.get("finite_part", []), field, "finite_part"),
            infinite_part=_sizes(obj.get("infinite_part", []), "infinite_part"),
            right_minimal=_sizes(obj.get("right_minimal", []), "right_minimal"),
        )
    return ContragredientStructure(
        field,
        nonsingular_part=_eigenblocks_from_json(obj.get("nonsingular_part", []), field,
                                                "nonsingular_part"),
        **{k: _sizes(obj.get(k, []), k) for k in ("type1", "type2", "type3", "type4")},
    )


@dataclass
class ProblemSpec:
    problem: str
    field: Field
    structure: Structure
    options: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {"problem": self.problem, "field": self.field.value,
               "structure": structure_to_json(self.structure)}
        if self.options:
            doc["options"] = self.options
        return doc

    @classmethod
    def from_structure(cls, s: Structure) -> "ProblemSpec":
        return cls(problem_of(s), s.field, s)


def spec_from_json(obj) -> ProblemSpec:
    if not isinstance(obj, dict):
        raise ParseError("spec must be a JSON object")
    missing = {"problem", "field", "structure"} - set(obj)
    if missing:
        raise ParseError(f"spec is missing {sorted(missing)}")
    extra = set(obj) - {"problem", "field", "structure", "options"}
    if extra:
        raise ParseError(f"spec has unexpected keys {sorted(extra)}")
    field = field_from_json(obj["field"])
    options = obj.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("options must be an object")
    return ProblemSpec(obj["problem"], field,
                       structure_from_json(obj["problem"], field, obj["structure"]), options)


# -- representations and documents -------------------------------------------------

def representation_to_json(a: Representation) -> dict:
    return {
        "field": a.field.value,
        "quiver": {"vertex_count": a.quiver.vertex_count,
                   "arrows": [{"id": x.id, "source": x.source, "target": x.target}
                              for x in a.quiver.arrows]},
        "dims": list(a.dims),
        "matrices": {x.id: matrix_to_json(a.mats[x.id]) for x in a.quiver.arrows},
    }


def representation_from_json(obj) -> Representation:
    if not isinstance(obj, dict) or not {"field", "quiver", "dims", "matrices"} <= set(obj):
        raise ParseError("representation needs field, quiver, dims and matrices")
    field = field_from_json(obj["field"])
    q = obj["quiver"]
    try:
        quiver = Quiver(q["vertex_count"],
                        tuple(Arrow(x["id"], x["source"], x["target"]) for x in q["arrows"]))
        mats = {k: matrix_from_json(v, field) for k, v in obj["matrices"].items()}
        return Representation(quiver, tuple(obj["dims"]), mats, field)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed representation: {exc}") from None


def matrices_from_json(obj, template: Representation) -> Representation:
    """Read a direction given as ``{"matrices": {...}}`` in the space of ``template``.

    Shape mismatches raise ``ValueError`` (not ``ParseError``).
    """
    if isinstance(obj, dict) and "matrices" in obj:
        obj = obj["matrices"]
    if not isinstance(obj, dict):
        raise ParseError("direction must be an object mapping arrow ids to matrices")
    ids = [x.id for x in template.quiver.arrows]
    if set(obj) != set(ids):
        raise ValueError(f"direction must give exactly the arrows {ids}, got {sorted(obj)}")
    mats = {k: matrix_from_json(obj[k], Field.C) for k in ids}
    field = template.field
    if any(isinstance(x, GaussianRational) for m in mats.values() for x in m.entries()):
        if field is Field.R:
            raise ValueError("complex entries in a direction over R")
    mats = {k: m.with_field(field) for k, m in mats.items()}
    return Representation(template.quiver, template.dims, mats, field)


def stars_to_json(p: StarPattern) -> list[dict]:
    return [{"param_index": k, "arrow": s.arrow, "row": s.row, "col": s.col}
            for k, s in enumerate(p)]


def pattern_document(spec: ProblemSpec, a: Representation, p: StarPattern,
                     report: VerificationReport, **extra: Any) -> dict:
    doc = {
        "problem": spec.problem,
        "field": spec.field.value,
        "structure": structure_to_json(spec.structure),
        "matrices": {x.id: matrix_to_json(a.mats[x.id]) for x in a.quiver.arrows},
        "stars": stars_to_json(p),
        "star_count": len(p),
        "codimension": report.codimension,
        "verification": report.to_dict(),
    }
    doc.update(extra)
    return doc
