import json

import pytest

from qloop.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_relations_pass(capsys):
    code, out, _ = _run(capsys, "relations", "--l", "2", "--trunc", "4", "--a", "all")
    rep = json.loads(out)
    assert code == 0 and rep["suite"] == "relations"
    assert all(c["status"] == "pass" for c in rep["checks"])
    assert {"name", "status", "millis"} <= set(rep["checks"][0])


def test_lweights_pass(capsys):
    code, out, _ = _run(capsys, "lweights", "--l", "2", "--trunc", "5", "--umax", "2")
    assert code == 0
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert any(n.startswith("symmetry: ") for n in names)


def test_ybe_points(capsys):
    code, out, _ = _run(capsys, "ybe", "--l", "1", "--points", "20", "--seed", "7")
    rep = json.loads(out)
    assert code == 0
    assert sum(c["name"].startswith("point") for c in rep["checks"]) == 20


def test_rll_and_funrel(capsys):
    assert _run(capsys, "rll", "--l", "1", "--trunc", "5", "--points", "3")[0] == 0
    assert _run(capsys, "funrel", "--l", "2", "--lambda", "2,1,0")[0] == 0
    assert _run(capsys, "funrel", "--l", "1", "--tensor", "--umax", "2")[0] == 0


@pytest.mark.parametrize("argv", [
    ["relations", "--l", "1", "--corrupt", "rho"],
    ["relations", "--l", "1", "--corrupt", "E1"],
    ["lweights", "--l", "1", "--trunc", "5", "--corrupt", "e0"],
    ["ybe", "--l", "1", "--points", "3", "--corrupt", "a"],
    ["rll", "--l", "1", "--trunc", "5", "--points", "2", "--corrupt", "L21"],
    ["funrel", "--l", "2", "--corrupt", "shift"],
])
def test_negative_controls_exit_1(capsys, argv):
    code, out, _ = _run(capsys, *argv)
    assert code == 1
    failed = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert failed and all(c.get("witness") for c in failed)


@pytest.mark.parametrize("argv", [
    ["ybe", "--corrupt", "rho"],
    ["ybe", "--l", "2", "--s", "1,1"],
    ["lweights", "--l", "2", "--a", "5"],
    ["lweights", "--l", "2", "--a", "x"],
    ["funrel", "--l", "2", "--lambda", "1,0"],
    ["rll", "--l", "0"],
    ["relations", "--trunc", "0"],
    ["ybe", "--seed", "-1"],
    ["ybe", "--s", "a,b"],
    ["frobnicate"],
    ["dump", "--module", "theta"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_stable_output_is_byte_identical(capsys):
    argv = ["funrel", "--l", "2", "--stable"]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    assert "millis" not in first
    _, parallel, _ = _run(capsys, *argv, "--jobs", "2")
    assert parallel == first


def test_text_format_and_out_file(capsys, tmp_path):
    path = tmp_path / "rep.txt"
    code, out, _ = _run(capsys, "ybe", "--l", "1", "--points", "2", "--format", "text", "--out", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert "PASS" in text and "checks passed" in text


@pytest.mark.parametrize("module", ["theta", "theta-bar", "verma", "vector", "eval", "L", "M", "R"])
def test_dump(capsys, module):
    code, out, _ = _run(capsys, "dump", "--l", "2", "--trunc", "2", "--a", "2", "--module", module)
    assert code == 0
    data = json.loads(out)
    assert data["name"]
