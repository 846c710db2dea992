"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 oracle rejection,
5 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import patterns
from .canonical import ValidationError, build, validate
from .check import run_trial
from .exact import Field
from .quiver import (
    ENTRY_ORDERS,
    PatternError,
    bracket,
    codimension,
    decompose,
    entry_order,
    greedy_simplest_miniversal,
    orthogonal_miniversal,
    pattern_direction,
    vectorize,
    verify_transversal,
)
from .render import ascii_pattern, latex_pattern
from .serialize import (
    ParseError,
    ProblemSpec,
    matrices_from_json,
    pattern_document,
    representation_to_json,
    scalar_to_json,
    spec_from_json,
    stars_to_json,
    matrix_to_json,
)

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_ORACLE, EXIT_PROPERTY = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"{path}: malformed JSON: {exc}") from None


def _load_spec(path: str) -> ProblemSpec:
    try:
        spec = spec_from_json(_load_json(path))
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    try:
        validate(spec.structure)
    except ValidationError as exc:
        raise CliError(EXIT_VALIDATION, f"{path}: invalid structure: {exc}") from None
    return spec


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _render(args, spec, a, p, doc):
    fmt = getattr(args, "format", "json")
    if fmt == "ascii":
        return ascii_pattern(a, p)
    if fmt == "latex":
        return latex_pattern(a, p)
    return _dump(doc)


def cmd_build(args) -> int:
    spec = _load_spec(args.spec)
    a = build(spec.structure)
    doc = {"problem": spec.problem, **representation_to_json(a)}
    _emit(args, _dump(doc))
    return EXIT_OK


def cmd_pattern(args) -> int:
    spec = _load_spec(args.spec)
    a = build(spec.structure)
    p = patterns.pattern(spec.structure)
    report = verify_transversal(a, p)
    if args.verify and not report.is_miniversal:
        raise CliError(EXIT_ORACLE, f"oracle rejected the pattern: {report}")
    doc = pattern_document(spec, a, p, report, source="closed-form")
    _emit(args, _render(args, spec, a, p, doc))
    return EXIT_OK


def cmd_greedy(args) -> int:
    spec = _load_spec(args.spec)
    a = build(spec.structure)
    p = greedy_simplest_miniversal(a, entry_order(a, args.order))
    report = verify_transversal(a, p)
    doc = pattern_document(spec, a, p, report, source="greedy", order=args.order)
    _emit(args, _render(args, spec, a, p, doc))
    return EXIT_OK


def cmd_orthogonal(args) -> int:
    spec = _load_spec(args.spec)
    a = build(spec.structure)
    basis = orthogonal_miniversal(a)
    doc = {
        "problem": spec.problem,
        "field": spec.field.value,
        "codimension": codimension(a),
        "basis": [{x.id: matrix_to_json(t.mats[x.id]) for x in a.quiver.arrows}
                  for t in basis],
    }
    _emit(args, _dump(doc))
    return EXIT_OK


def cmd_decompose(args) -> int:
    spec = _load_spec(args.spec)
    a = build(spec.structure)
    p = patterns.pattern(spec.structure)
    try:
        d = matrices_from_json(_load_json(args.direction), a)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{args.direction}: {exc}") from None
    except ValueError as exc:
        raise CliError(EXIT_VALIDATION, f"{args.direction}: {exc}") from None
    try:
        coeffs, witness = decompose(a, p, d)
    except PatternError as exc:
        raise CliError(EXIT_ORACLE, str(exc)) from None
    residual = [x - y - z for x, y, z in zip(vectorize(d),
                                             vectorize(pattern_direction(a, p, coeffs)),
                                             vectorize(bracket(witness, a)))]
    field = Field.C if d.field is Field.C else a.field
    doc = {
        "problem": spec.problem,
        "field": spec.field.value,
        "stars": stars_to_json(p),
        "coefficients": [scalar_to_json(c, field) for c in coeffs],
        "witness": [matrix_to_json(c) for c in witness],
        "residual_is_zero": not any(residual),
    }
    _emit(args, _dump(doc))
    return EXIT_OK if not any(residual) else EXIT_ORACLE


def cmd_check(args) -> int:
    if args.max_size < 1:
        raise CliError(EXIT_PARSE, "--max-size must be >= 1")
    trial = partial(run_trial, args.seed, max_size=args.max_size,
                    inject_fault=args.inject_fault)
    indices = range(args.trials)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(trial, indices))
    else:
        results = [trial(i) for i in indices]
    passed = Counter(r.problem for r in results if r.ok)
    total = Counter(r.problem for r in results)
    lines = [f"{problem}: {passed[problem]}/{total[problem]} passed"
             for problem in ("similarity", "pencil", "contragredient")]
    failed = [r for r in results if not r.ok]
    for r in failed:
        lines.append(f"FAIL trial {r.index}: " + "; ".join(r.failures))
        lines.append("replay spec: " + json.dumps(r.spec, ensure_ascii=False))
    _emit(args, "\n".join(lines))
    return EXIT_PROPERTY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miniversal",
        description="Canonical forms and simplest miniversal deformations of matrices, "
                    "matrix pencils and contragredient pencils.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_out(p):
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
        return p

    p = with_out(sub.add_parser("build", help="materialize the canonical matrices"))
    p.add_argument("spec")
    p.set_defaults(func=cmd_build)

    p = with_out(sub.add_parser("pattern", help="closed-form star pattern"))
    p.add_argument("spec")
    p.add_argument("--format", choices=("json", "ascii", "latex"), default="json")
    p.add_argument("--verify", action="store_true",
                   help="exit 4 unless the oracle confirms miniversality")
    p.set_defaults(func=cmd_pattern)

    p = with_out(sub.add_parser("greedy", help="greedy pattern from a scan of unit entries"))
    p.add_argument("spec")
    p.add_argument("--order", choices=sorted(ENTRY_ORDERS), default="row-major")
    p.add_argument("--format", choices=("json", "ascii", "latex"), default="json")
    p.set_defaults(func=cmd_greedy)

    p = with_out(sub.add_parser("orthogonal", help="basis of the orthogonal complement "
                                                   "of the tangent space"))
    p.add_argument("spec")
    p.set_defaults(func=cmd_orthogonal)

    p = with_out(sub.add_parser("decompose", help="first-order coefficients of a direction"))
    p.add_argument("spec")
    p.add_argument("direction")
    p.set_defaults(func=cmd_decompose)

    p = with_out(sub.add_parser("check", help="random property checks"))
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"miniversal: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
