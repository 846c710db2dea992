"""Simplest miniversal deformations of matrices, pencils and contragredient pencils.

Canonical forms are built exactly over Q or Q(i); every closed-form star
pattern can be checked against the tangent-space transversality oracle in
:mod:`miniversal.quiver`.
"""

from .canonical import (
    ComplexEig,
    ComplexPair,
    ContragredientStructure,
    JordanStructure,
    PencilStructure,
    RealEig,
    ValidationError,
    build,
    build_contragredient,
    build_jordan,
    build_pencil,
)
from .exact import Field, GaussianRational, Matrix
from .patterns import (
    contragredient_pattern,
    pattern,
    pencil_pattern,
    similarity_pattern,
    star_count,
)
from .quiver import (
    Quiver,
    Representation,
    StarPattern,
    codimension,
    decompose,
    greedy_simplest_miniversal,
    orthogonal_miniversal,
    verify_transversal,
)

__all__ = [
    "ComplexEig", "ComplexPair", "ContragredientStructure", "JordanStructure",
    "PencilStructure", "RealEig", "ValidationError", "build", "build_contragredient",
    "build_jordan", "build_pencil", "Field", "GaussianRational", "Matrix",
    "contragredient_pattern", "pattern", "pencil_pattern", "similarity_pattern",
    "star_count", "Quiver", "Representation", "StarPattern", "codimension", "decompose",
    "greedy_simplest_miniversal", "orthogonal_miniversal", "verify_transversal",
]
