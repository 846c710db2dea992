import json
import subprocess
import sys

import pytest

from miniversal import cli
from miniversal.canonical import build
from miniversal.quiver import StarPattern
from miniversal.serialize import representation_from_json, spec_from_json

PAIR_SPEC = {"problem": "similarity", "field": "R",
             "structure": {"eigenblocks": [{"eigenvalue": {"re": "1", "im": "2"},
                                            "partition": [2]}]}}
PENCIL_SPEC = {"problem": "pencil", "field": "C",
               "structure": {"left_minimal": [2], "finite_part": [
                   {"eigenvalue": {"re": "2", "im": "3"}, "partition": [1]}],
                   "infinite_part": [1], "right_minimal": [2]}}
CONTRA_SPEC = {"problem": "contragredient", "field": "R",
               "structure": {"nonsingular_part": [{"eigenvalue": "-2", "partition": [1]}],
                             "type1": [1], "type3": [2], "type4": [2]}}


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="spec.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_round_trip(capsys, write):
    for spec in (PAIR_SPEC, PENCIL_SPEC, CONTRA_SPEC):
        code, out, _ = run(capsys, "build", write(spec))
        assert code == 0
        doc = json.loads(out)
        assert doc["problem"] == spec["problem"]
        a = build(spec_from_json(spec).structure)
        b = representation_from_json(doc)
        assert b.mats == a.mats and b.dims == a.dims


def test_pattern_example(capsys, write):
    code, out, _ = run(capsys, "pattern", "--verify", write(PAIR_SPEC))
    assert code == 0
    doc = json.loads(out)
    assert [(s["row"], s["col"]) for s in doc["stars"]] == [(0, 0), (1, 0), (2, 0), (3, 0)]
    assert doc["star_count"] == doc["codimension"] == 4
    assert doc["verification"]["is_miniversal"] is True
    assert doc["matrices"]["A"]["entries"][:4] == ["1", "2", "1", "0"]


@pytest.mark.parametrize("spec", [PAIR_SPEC, PENCIL_SPEC, CONTRA_SPEC])
def test_pattern_deterministic(capsys, write, spec):
    path = write(spec)
    first = run(capsys, "pattern", "--verify", path)
    second = run(capsys, "pattern", "--verify", path)
    assert first[0] == 0 and first == second


def test_pattern_ascii_and_latex(capsys, write):
    code, out, _ = run(capsys, "pattern", "--format", "ascii", write(PAIR_SPEC))
    assert code == 0 and out.count("*") == 4
    code, out, _ = run(capsys, "pattern", "--format", "latex", write(PAIR_SPEC))
    assert code == 0
    assert "\\lambda_{1}" in out and "\\lambda_{4}" in out and "bmatrix" in out


def test_out_flag(capsys, write, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "pattern", write(PENCIL_SPEC), "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verification"]["is_miniversal"]


@pytest.mark.parametrize("order", ["row-major", "column-major", "reversed"])
def test_greedy(capsys, write, order):
    code, out, _ = run(capsys, "greedy", "--order", order, write(CONTRA_SPEC))
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == order
    assert doc["star_count"] == doc["codimension"]
    assert doc["verification"]["is_miniversal"]


def test_orthogonal(capsys, write):
    code, out, _ = run(capsys, "orthogonal", write(PENCIL_SPEC))
    assert code == 0
    doc = json.loads(out)
    assert len(doc["basis"]) == doc["codimension"] > 0


def test_decompose(capsys, write):
    direction = {"matrices": {"A": {"rows": 2, "cols": 2, "entries": ["1", "2", "3", "4"]}}}
    spec = {"problem": "similarity", "field": "C",
            "structure": {"eigenblocks": [{"eigenvalue": "0", "partition": [2]}]}}
    code, out, _ = run(capsys, "decompose", write(spec), write(direction, "d.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["residual_is_zero"] is True
    assert doc["coefficients"] == [{"re": "5", "im": "0"}, {"re": "3", "im": "0"}]


def test_decompose_shape_mismatch(capsys, write):
    direction = {"A": {"rows": 1, "cols": 1, "entries": ["1"]}}
    code, _, err = run(capsys, "decompose", write(PAIR_SPEC), write(direction, "d.json"))
    assert code == 3 and err


def test_decompose_complex_over_reals(capsys, write):
    direction = {"A": {"rows": 4, "cols": 4,
                       "entries": [{"re": "0", "im": "1"}] + ["0"] * 15}}
    code, _, _ = run(capsys, "decompose", write(PAIR_SPEC), write(direction, "d.json"))
    assert code == 3


def test_decompose_malformed_direction(capsys, write):
    code, _, _ = run(capsys, "decompose", write(PAIR_SPEC), write("{nope", "d.json"))
    assert code == 2


@pytest.mark.parametrize("text", ["{not json", json.dumps({"problem": "similarity"}),
                                  json.dumps({**PAIR_SPEC, "field": "Q"})])
def test_parse_errors(capsys, write, text):
    code, _, err = run(capsys, "pattern", write(text))
    assert code == 2 and err.startswith("miniversal:")


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "build", str(tmp_path / "absent.json"))[0] == 2


def test_validation_error(capsys, write):
    bad = {"problem": "similarity", "field": "C",
           "structure": {"eigenblocks": [{"eigenvalue": "1", "partition": [1, 2]}]}}
    code, _, err = run(capsys, "pattern", write(bad))
    assert code == 3 and "partition" in err


def test_contragredient_zero_eigenvalue_rejected(capsys, write):
    bad = {"problem": "contragredient", "field": "R",
           "structure": {"nonsingular_part": [{"eigenvalue": "0", "partition": [1]}]}}
    assert run(capsys, "build", write(bad))[0] == 3


def test_oracle_rejection(capsys, write, monkeypatch):
    monkeypatch.setattr(cli.patterns, "pattern", lambda s: StarPattern())
    code, _, _ = run(capsys, "pattern", "--verify", write(PAIR_SPEC))
    assert code == 4
    # without --verify the document is still emitted, with the failed report
    code, out, _ = run(capsys, "pattern", write(PAIR_SPEC))
    assert code == 0 and json.loads(out)["verification"]["is_miniversal"] is False


def test_bad_arguments():
    with pytest.raises(SystemExit) as exc:
        cli.main(["pattern"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["greedy", "x.json", "--order", "diagonal"])
    assert exc.value.code == 2


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--max-size", "3", "--trials", "15", "--seed", "1")
    assert code == 0
    assert "similarity: 5/5 passed" in out


def test_check_scalar_cases(capsys):
    assert run(capsys, "check", "--max-size", "1", "--trials", "10")[0] == 0


def test_check_fault_injection(capsys):
    code, out, _ = run(capsys, "check", "--trials", "3", "--inject-fault")
    assert code == 5
    assert "FAIL trial 0" in out and "replay spec" in out


def test_check_parallel_matches_sequential(capsys):
    seq = run(capsys, "check", "--trials", "6", "--seed", "7")
    par = run(capsys, "check", "--trials", "6", "--seed", "7", "--jobs", "2")
    assert seq == par


def test_check_bad_size(capsys):
    assert run(capsys, "check", "--max-size", "0")[0] == 2


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "miniversal", "pattern", "--verify",
                           write(PAIR_SPEC)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["star_count"] == 4
