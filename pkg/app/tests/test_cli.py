"""
Tests for the command-line front end: outputs, file formats and exit codes.
"""

import json

import pytest

from app.api.schemas import GfFile, ProblemFile, TableFile
from app.cli import load_gf, load_problem, main
from app.core.algebra import LaurentPoly, RationalFn, ratfn_eq
from app.tests.conftest import worked_char_poly, poly


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def worked_payload(problem_path):
    return json.loads(problem_path("worked_example").read_text(encoding="utf-8"))


def test_genfunc_worked_example(problem_path, tmp_path):
    out = tmp_path / "gf.json"
    code = main(["genfunc", str(problem_path("worked_example")), "--out", str(out), "--short-names"])
    assert code == 0
    gf = json.loads(out.read_text(encoding="utf-8"))
    assert gf["variables"] == ["z", "w"]
    assert gf["numerator"] == [{"alpha": [1, 0], "c": "1"}, {"alpha": [0, 0], "c": "-1"}]
    assert [t["alpha"] for t in gf["denominator"]] == [[2, 1], [1, 1], [1, 0], [0, 1], [0, 0]]


def test_genfunc_to_stdout(problem_path, capsys):
    assert main(["genfunc", str(problem_path("fibonacci"))]) == 0
    gf = GfFile.model_validate_json(capsys.readouterr().out)
    assert gf.variables == ["z1"]
    assert gf.to_ratfn() == RationalFn(LaurentPoly.one(1), poly(1, {(2,): 1, (1,): -1, (0,): -1}))


def test_genfunc_is_deterministic(problem_path, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    main(["genfunc", str(problem_path("worked_example")), "--out", str(first)])
    main(["genfunc", str(problem_path("worked_example")), "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_solve_worked_example(problem_path, tmp_path):
    out = tmp_path / "table.json"
    assert main(["solve", str(problem_path("worked_example")), "--box", "3,2", "--out", str(out)]) == 0
    table = TableFile.model_validate_json(out.read_text(encoding="utf-8"))
    assert table.kind == "solution"
    assert table.bound == [3, 2]
    assert len(table.entries) == 12
    assert table.lookup((3, 1)) == 2
    assert table.lookup((2, 2)) == 1


def test_solve_fibonacci(problem_path, capsys):
    assert main(["solve", str(problem_path("fibonacci")), "--box", "6"]) == 0
    table = TableFile.model_validate_json(capsys.readouterr().out)
    assert [e.value for e in table.entries] == ["0", "1", "1", "2", "3", "5", "8"]


def test_solve_box_too_small(problem_path, capsys):
    assert main(["solve", str(problem_path("worked_example")), "--box", "1,0"]) == 1
    assert "BoxTooSmall" in capsys.readouterr().err


def test_solve_needs_box(problem_path, capsys):
    assert main(["solve", str(problem_path("worked_example"))]) == 1
    assert "--box" in capsys.readouterr().err


def test_green_worked_example(problem_path, tmp_path):
    out = tmp_path / "green.json"
    assert main(["green", str(problem_path("worked_example")), "--tau", "0,0", "--out", str(out)]) == 0
    F = load_gf(out).to_ratfn()
    expected = RationalFn(
        poly(2, {(2, 1): 1, (1, 1): -1, (1, 0): -1, (0, 1): -1}), worked_char_poly().shift((1, 1))
    )
    assert ratfn_eq(F, expected)


def test_green_outside_X0(problem_path, capsys):
    assert main(["green", str(problem_path("worked_example")), "--tau", "2,1"]) == 1
    assert "Tau0NotInX0" in capsys.readouterr().err


def test_expand(tmp_path, capsys):
    gf = write_json(tmp_path / "gf.json", {
        "variables": ["z"],
        "numerator": [{"alpha": [0], "c": "1"}],
        "denominator": [{"alpha": [1], "c": "1"}, {"alpha": [0], "c": "-1"}],
    })
    assert main(["expand", gf, "--order", "4"]) == 0
    table = TableFile.model_validate_json(capsys.readouterr().out)
    assert table.kind == "expansion"
    assert table.upper == [-1]
    assert [e.x for e in table.entries] == [[-5], [-4], [-3], [-2], [-1]]
    assert [e.value for e in table.entries] == ["1"] * 5


def test_expand_worked_example(problem_path, tmp_path, capsys):
    """The recorded closed form expands to r(3, 1) = 2 at exponent -(4, 2)."""
    expected = worked_payload(problem_path)["expected"]
    gf = write_json(tmp_path / "gf.json", expected)
    assert main(["expand", gf, "--order", "3"]) == 0
    table = TableFile.model_validate_json(capsys.readouterr().out)
    assert table.upper == [-1, -1]
    assert table.lookup((-4, -2)) == 2
    assert table.lookup((-3, -3)) == 1


def test_expand_not_expandable(tmp_path, capsys):
    gf = write_json(tmp_path / "gf.json", {
        "numerator": [{"alpha": [0, 0], "c": "1"}],
        "denominator": [{"alpha": [1, 0], "c": "1"}, {"alpha": [0, 1], "c": "1"}],
    })
    assert main(["expand", gf, "--order", "3"]) == 2
    assert "NotExpandableAtInfinity" in capsys.readouterr().err


def test_verify_worked_example(problem_path, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", str(problem_path("worked_example")), "--box", "10,6", "--out", str(out)])
    assert code == 0
    assert "verification passed" in capsys.readouterr().out
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert report["box"] == [10, 6]


def test_verify_default_box(problem_path, capsys):
    assert main(["verify", str(problem_path("fibonacci"))]) == 0
    assert "PASS oracle" in capsys.readouterr().out


def test_verify_corrupted_data(problem_path, tmp_path, capsys):
    payload = worked_payload(problem_path)
    payload["data"]["entries"][0]["value"] = "2"
    path = write_json(tmp_path / "bad.json", payload)
    assert main(["verify", path, "--box", "6,4"]) == 3
    out = capsys.readouterr().out
    assert "FAIL expected_oracle" in out
    assert "verification FAILED" in out


def test_missing_dominant_corner(problem_path, tmp_path, capsys):
    payload = worked_payload(problem_path)
    payload["coeffs"] = [t for t in payload["coeffs"] if t["alpha"] != [2, 1]]
    path = write_json(tmp_path / "bad.json", payload)
    assert main(["genfunc", path]) == 1
    assert "MissingDominantCorner" in capsys.readouterr().err


@pytest.mark.parametrize("value", ["1.5", 0.5, "1/0", "one"])
def test_bad_rational_reports_location(problem_path, tmp_path, capsys, value):
    payload = worked_payload(problem_path)
    payload["coeffs"][1]["c"] = value
    path = write_json(tmp_path / "bad.json", payload)
    assert main(["genfunc", path]) == 1
    assert "coeffs.1.c" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["genfunc", str(tmp_path / "absent.json")]) == 1
    assert "error" in capsys.readouterr().err


def test_unknown_command(capsys):
    assert main(["integrate", "x.json"]) == 1
    assert "error" in capsys.readouterr().err


def test_problem_file_round_trip(problem_path):
    """from_problem writes back what load_problem read."""
    problem = load_problem(problem_path("worked_example"))
    again = ProblemFile.from_problem(problem).to_problem()
    assert again.equation == problem.equation
    assert again.data == problem.data
    assert again.expected == problem.expected


def test_gf_file_round_trip(problem_path):
    problem = load_problem(problem_path("worked_example"))
    gf = GfFile.from_ratfn(problem.expected, ["z", "w"])
    again = GfFile.model_validate_json(gf.model_dump_json())
    assert again == gf
    assert again.to_ratfn() == problem.expected
