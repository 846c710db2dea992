"""Batch property checks of the closed-form patterns against the exact oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .canonical import Structure, build, problem_of
from .exact import Field
from .patterns import layout, pattern, star_count
from .quiver import (
    Star,
    StarPattern,
    codimension,
    entry_coordinates,
    greedy_simplest_miniversal,
    verify_transversal,
)
from .sampling import PROBLEMS, random_structure
from .serialize import ProblemSpec


@dataclass
class TrialResult:
    index: int
    problem: str
    field: str
    spec: dict
    failures: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def corrupt(a, p: StarPattern) -> StarPattern:
    """Drop the last star, or add one when the pattern is empty (test tripwire)."""
    if len(p):
        return StarPattern(p.stars[:-1])
    coords = entry_coordinates(a)
    return StarPattern((Star(*coords[0]),)) if coords else p


def check_structure(s: Structure, inject_fault: bool = False) -> list[str]:
    """Return the violated properties (empty when every property holds)."""
    failures = []
    a = build(s)
    p = pattern(s)
    if inject_fault:
        p = corrupt(a, p)
    layouts = layout(s)
    for lay in layouts:
        if lay.shape != a.mats[lay.arrow].shape:
            failures.append(f"tiling: layout {lay.arrow} is {lay.shape}, "
                            f"matrix is {a.mats[lay.arrow].shape}")
    try:
        report = verify_transversal(a, p)
    except ValueError as exc:
        return failures + [f"position validity: {exc}"]
    if not report.is_miniversal:
        failures.append(f"soundness: {report}")
    codim = codimension(a)
    greedy = greedy_simplest_miniversal(a)
    if not (len(p) == codim == len(greedy)):
        failures.append(f"minimality: pattern {len(p)}, codimension {codim}, "
                        f"greedy {len(greedy)}")
    if not inject_fault and star_count(s) != len(p):
        failures.append(f"star_count: formula {star_count(s)} vs pattern {len(p)}")
    return failures


def run_trial(seed: int, index: int, max_size: int, inject_fault: bool = False) -> TrialResult:
    rng = random.Random(f"{seed}:{index}")
    problem = PROBLEMS[index % len(PROBLEMS)]
    field = rng.choice([Field.C, Field.R])
    s = random_structure(rng, problem, field, max_size)
    result = TrialResult(index, problem_of(s), field.value, ProblemSpec.from_structure(s).to_json())
    result.failures = check_structure(s, inject_fault)
    return result
