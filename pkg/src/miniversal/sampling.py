"""Enumeration and seeded random sampling of canonical structures."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .canonical import (
    ComplexEig,
    ComplexPair,
    ContragredientStructure,
    EigSpec,
    JordanStructure,
    PencilStructure,
    RealEig,
    Structure,
    eig_weight,
)
from .exact import Field, gaussian


def partitions(n: int, largest: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def partitions_upto(n: int) -> Iterator[tuple[int, ...]]:
    """Nonempty partitions of every integer in ``1..n``."""
    for total in range(1, n + 1):
        yield from partitions(total)


def _multisets_upto(budget: int, cost) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing size tuples whose summed ``cost`` stays within ``budget``."""
    def rec(remaining, largest):
        yield ()
        for k in range(largest, 0, -1):
            c = cost(k)
            if c <= remaining:
                for rest in rec(remaining - c, k):
                    yield (k,) + rest
    yield from rec(budget, budget)


def jordan_structures(field: Field, pool: Sequence[EigSpec], max_size: int,
                      max_eigs: int = 2, weight_factor: int = 1
                      ) -> Iterator[JordanStructure]:
    """Every Jordan structure over ``pool`` with at most ``max_eigs`` eigenvalues.

    ``weight_factor`` scales each matrix row's cost; contragredient and
    pencil sums count a square block twice (once in ``m``, once in ``n``).
    """
    yield from _jordan_structures(field, pool, max_size, max_eigs, weight_factor, True)


def _jordan_structures(field, pool, budget, max_eigs, factor, nonempty):
    if not nonempty:
        yield JordanStructure(field)
    for k in range(1, max_eigs + 1):
        for eigs in itertools.combinations(pool, k):
            weights = [eig_weight(e) * factor for e in eigs]
            yield from _assign(field, eigs, weights, budget, [])


def _assign(field, eigs, weights, budget, acc):
    if not eigs:
        yield JordanStructure(field, tuple(acc))
        return
    w = weights[0]
    for total in range(1, budget // w + 1):
        for part in partitions(total):
            yield from _assign(field, eigs[1:], weights[1:], budget - w * total,
                               acc + [(eigs[0], part)])


def _jordan_budgeted(field, pool, budget, max_eigs, factor):
    """Jordan structures (possibly empty) with ``factor * size <= budget``, paired with cost."""
    yield JordanStructure(field), 0
    for s in _jordan_structures(field, pool, budget, max_eigs, factor, True):
        yield s, factor * s.size


def pencil_structures(field: Field, pool: Sequence[EigSpec], max_dim_sum: int,
                      max_eigs: int = 2) -> Iterator[PencilStructure]:
    """Every pencil whose ``m + n`` is at most ``max_dim_sum``."""
    for left in _multisets_upto(max_dim_sum, lambda p: 2 * p - 1):
        b1 = max_dim_sum - sum(2 * p - 1 for p in left)
        for finite, c in _jordan_budgeted(field, pool, b1, max_eigs, 2):
            b2 = b1 - c
            for infinite in _multisets_upto(b2, lambda k: 2 * k):
                b3 = b2 - 2 * sum(infinite)
                for right in _multisets_upto(b3, lambda q: 2 * q - 1):
                    if not (left or finite.eigenblocks or infinite or right):
                        continue
                    yield PencilStructure(field, tuple(sorted(left)), finite, infinite, right)


def contragredient_structures(field: Field, pool: Sequence[EigSpec], max_dim_sum: int,
                              max_eigs: int = 2) -> Iterator[ContragredientStructure]:
    """Every contragredient pair whose ``m + n`` is at most ``max_dim_sum``."""
    for ns, c in _jordan_budgeted(field, pool, max_dim_sum, max_eigs, 2):
        b1 = max_dim_sum - c
        for t1 in _multisets_upto(b1, lambda k: 2 * k):
            b2 = b1 - 2 * sum(t1)
            for t2 in _multisets_upto(b2, lambda k: 2 * k):
                b3 = b2 - 2 * sum(t2)
                for t3 in _multisets_upto(b3, lambda r: 2 * r - 1):
                    b4 = b3 - sum(2 * r - 1 for r in t3)
                    for t4 in _multisets_upto(b4, lambda r: 2 * r - 1):
                        if not (ns.eigenblocks or t1 or t2 or t3 or t4):
                            continue
                        yield ContragredientStructure(field, ns, t1, t2, t3, t4)


# -- random sampling ---------------------------------------------------------

REAL_VALUES = (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(2), Fraction(-3))
COMPLEX_VALUES = REAL_VALUES + (gaussian(2, 3), gaussian(0, 1), gaussian(1, -1))
PAIRS = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(2)), (Fraction(-1, 2), Fraction(3)))


def eigen_pool(field: Field, nonzero: bool = False) -> list[EigSpec]:
    if Field(field) is Field.C:
        pool = [ComplexEig(v) for v in COMPLEX_VALUES]
    else:
        pool = [RealEig(v) for v in REAL_VALUES] + [ComplexPair(a, b) for a, b in PAIRS]
    if nonzero:
        pool = [e for e in pool if isinstance(e, ComplexPair) or e.value]
    return pool


def _random_partition(rng: random.Random, max_size: int, max_parts: int) -> tuple[int, ...]:
    parts = [rng.randint(1, max_size) for _ in range(rng.randint(1, max_parts))]
    return tuple(sorted(parts, reverse=True))


def _random_jordan(rng, field, max_size, max_eigs, nonzero=False, allow_empty=False):
    pool = eigen_pool(field, nonzero)
    lo = 0 if allow_empty else 1
    k = rng.randint(lo, max_eigs)
    eigs = rng.sample(pool, k)
    blocks = []
    for e in eigs:
        part = _random_partition(rng, max_size, 2)
        if isinstance(e, ComplexPair):
            part = part[:1]
        blocks.append((e, part))
    return JordanStructure(field, tuple(blocks))


def random_structure(rng: random.Random, problem: str, field: Field,
                     max_size: int = 3) -> Structure:
    """A random valid structure; block sizes are uniform in ``[1, max_size]``."""
    field = Field(field)

    def maybe(parts=2):
        if rng.random() < 0.5:
            return ()
        return _random_partition(rng, max_size, parts)

    if problem == "similarity":
        return _random_jordan(rng, field, max_size, 2)
    if problem == "pencil":
        while True:
            s = PencilStructure(
                field,
                left_minimal=tuple(sorted(maybe())),
                finite_part=_random_jordan(rng, field, max_size, 1, allow_empty=True),
                infinite_part=maybe(1),
                right_minimal=maybe(),
            )
            if s.left_minimal or s.finite_part.eigenblocks or s.infinite_part or s.right_minimal:
                return s
    if problem == "contragredient":
        while True:
            s = ContragredientStructure(
                field,
                nonsingular_part=_random_jordan(rng, field, max_size, 1, nonzero=True,
                                                allow_empty=True),
                type1=maybe(1), type2=maybe(1), type3=maybe(), type4=maybe(),
            )
            if (s.nonsingular_part.eigenblocks or s.type1 or s.type2 or s.type3
                    or s.type4):
                return s
    raise ValueError(f"unknown problem {problem!r}")


PROBLEMS = ("similarity", "pencil", "contragredient")
