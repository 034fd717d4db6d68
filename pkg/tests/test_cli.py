"""End-to-end tests for the command-line front end."""

import json

import pytest

from core.design import write_configuration
from main import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def octahedron_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    assert run(["gen", "cross-polytope", "--d", "2", "--output", str(path)]) == 0
    capsys.readouterr()
    return path


def test_gen_then_verify(capsys, octahedron_file):
    code, out, _ = _run(capsys, "verify", str(octahedron_file), "--t", "3")
    assert code == 0
    assert json.loads(out)["verdict"] == "IS_DESIGN"


def test_verify_not_design(capsys, octahedron_file):
    code, out, _ = _run(capsys, "verify", str(octahedron_file), "--t", "4")
    assert code == 1
    report = json.loads(out)
    assert report["verdict"] == "NOT_DESIGN"
    assert report["max_abs_residual"] == "2/15"


def test_gen_to_stdout(capsys):
    code, out, _ = _run(capsys, "gen", "polygon", "--n", "4")
    assert code == 0
    assert len(json.loads(out)["points"]) == 4


def test_bound(capsys):
    code, out, _ = _run(capsys, "bound", "--t", "2", "--d", "1", "--n", "24")
    assert code == 0
    assert json.loads(out)["holds"] is False


def test_bound_defaults_to_max_n(capsys):
    code, out, _ = _run(capsys, "bound", "--t", "2", "--d", "1")
    assert code == 0
    assert json.loads(out)["n"] == 23


def test_max_n_rows(capsys):
    code, out, _ = _run(capsys, "max-n", "--t", "1-2", "--d", "1")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [(row["t"], row["d"], row["max_feasible_n"]) for row in rows] == [(1, 1, 23), (2, 1, 23)]


def test_system_export(capsys, tmp_path, octahedron_file):
    export = tmp_path / "system.txt"
    code, out, _ = _run(capsys, "system", str(octahedron_file), "--t", "3", "--export", str(export))
    assert code == 0
    summary = json.loads(out)
    assert (summary["num_variables"], summary["num_equations"]) == (9, 22)
    assert export.read_text().startswith("vars: x_4_1")


def test_rigidity_flex(capsys, tmp_path, antipodal_pairs):
    path = tmp_path / "pairs.json"
    write_configuration(antipodal_pairs, path)
    code, out, _ = _run(capsys, "rigidity", str(path), "--t", "1")
    assert code == 0
    assert json.loads(out)["status"] == "NOT_RIGID_FLEX_FOUND"


def test_flex_hyperplane(capsys, tmp_path, antipodal_pairs):
    path = tmp_path / "pairs.json"
    write_configuration(antipodal_pairs, path)
    code, out, _ = _run(capsys, "flex", str(path), "--t", "1", "--anchors", "hyperplane")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["succeeded"] is True
    assert payload["witness"] is not None


def test_rigidity_rejects_non_design(capsys, octahedron_file):
    code, out, err = _run(capsys, "rigidity", str(octahedron_file), "--t", "4")
    assert code == 2
    assert out == ""
    assert err.startswith("error: t:")


def test_float_override(capsys, octahedron_file):
    code, out, _ = _run(capsys, "--float", "verify", str(octahedron_file), "--t", "3")
    assert code == 0
    assert json.loads(out)["mode"] == "float"


@pytest.mark.parametrize("argv", [
    ["verify", "missing.json", "--t", "3"],
    ["verify", "--t", "3"],
    ["bound", "--t", "2", "--d", "1", "--bogus"],
    ["gen", "polygon"],
    ["max-n", "--t", "3-1", "--d", "1"],
])
def test_input_errors(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error: ")
    assert len(err.strip().splitlines()) == 1


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dimension_d": 1, "mode": "float", "points": [[1.0, 0.0, 0.0]]}))
    code, _, err = _run(capsys, "verify", str(path), "--t", "1")
    assert code == 2
    assert err.startswith("error: points[0]:")


@pytest.mark.parametrize("argv", [
    ["gen", "icosahedron"],
    ["bound", "--t", "3", "--d", "2"],
    ["max-n", "--t", "1-3", "--d", "1-2"],
])
def test_deterministic_output(capsys, argv):
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second


def test_deterministic_rigidity(capsys, tmp_path, antipodal_pairs):
    path = tmp_path / "pairs.json"
    write_configuration(antipodal_pairs, path)
    _, first, _ = _run(capsys, "rigidity", str(path), "--t", "1")
    _, second, _ = _run(capsys, "rigidity", str(path), "--t", "1")
    assert first == second


@pytest.mark.parametrize("argv, field", [
    (["gen", "polygon", "--n", "4", "--output"], "output"),
    (["system", "{octahedron}", "--t", "3", "--export"], "export"),
])
def test_unwritable_output(capsys, tmp_path, octahedron_file, argv, field):
    target = tmp_path / "missing" / f"{field}.txt"
    argv = [arg.format(octahedron=octahedron_file) for arg in argv] + [str(target)]
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith(f"error: {target}: cannot write file")
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("position", ["before", "after"])
def test_log_level_anywhere(capsys, octahedron_file, position):
    argv = ["verify", str(octahedron_file), "--t", "3"]
    argv = ["--log-level", "INFO"] + argv if position == "before" else argv + ["--log-level", "INFO"]
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["verdict"] == "IS_DESIGN"


@pytest.mark.parametrize("argv", [
    ["verify", "{octahedron}", "--t", "4"],
    ["system", "{octahedron}", "--t", "3"],
    ["flex", "{pairs}", "--t", "1", "--anchors", "hyperplane"],
])
def test_deterministic_file_commands(capsys, tmp_path, octahedron_file, antipodal_pairs, argv):
    pairs = tmp_path / "pairs.json"
    write_configuration(antipodal_pairs, pairs)
    argv = [arg.format(octahedron=octahedron_file, pairs=pairs) for arg in argv]
    first_code, first, _ = _run(capsys, *argv)
    second_code, second, _ = _run(capsys, *argv)
    assert first_code == second_code
    assert first == second
