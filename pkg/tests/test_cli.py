import json
import subprocess
import sys

import pytest

from gradelink.cli import EXIT_INPUT, EXIT_OK, EXIT_TRUNCATED, main, run
from gradelink.fixtures import NAMES, fixture
from gradelink.session import InputError, SessionInput


def call(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


@pytest.mark.parametrize("name", NAMES)
def test_fixture_round_trip(name):
    doc = fixture(name)
    again = SessionInput.loads(doc.dumps())
    assert again == doc
    again.build()


def test_fixtures_command(capsys):
    code, doc = call(capsys, "fixtures", "koszul-kxy")
    assert code == EXIT_OK and set(doc["modules"]) == {"R", "k", "R/(x)", "R/(x^2)"}


def test_grade(capsys):
    code, rep = call(capsys, "grade", "--fixture", "koszul-kxy", "--M", "k")
    assert code == EXIT_OK and rep["result"]["grade"] == 2
    code, rep = call(capsys, "grade", "--fixture", "koszul-kxy", "--M", "R/(x)")
    assert rep["result"]["grade"] == 1


def test_resolution_ranks(capsys):
    code, rep = call(capsys, "resolution", "--fixture", "koszul-kxy", "--M", "k")
    assert rep["result"]["ranks"] == [1, 2, 1]


def test_semidualizing(capsys):
    code, rep = call(capsys, "semidualizing", "--fixture", "artinian-level1", "--C", "omega")
    assert code == EXIT_OK and rep["result"]["semidualizing"]["verdict"] == "semidualizing-up-to-bound"


def test_link_via_stdin(tmp_path, capsys):
    path = tmp_path / "in.json"
    path.write_text(fixture("koszul-kxy").dumps())
    out = tmp_path / "out.json"
    code = main(["link", "--in", str(path), "--out", str(out), "--phi", "R/(x^2)->R/(x)"])
    rep = json.loads(out.read_text())
    assert code == EXIT_OK
    assert rep["result"]["link"]["dual_sequence_exact"] and rep["result"]["kernel_identity"]["status"] == "verified"


def test_malformed_matrix(tmp_path, capsys):
    doc = fixture("koszul-kxy").to_json()
    doc["maps"]["R/(x^2)->R/(x)"]["matrix"] = [["1", "x"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, rep = call(capsys, "link", "--in", str(path), "--phi", "R/(x^2)->R/(x)")
    assert code == EXIT_INPUT
    assert rep["path"] == "maps.R/(x^2)->R/(x).matrix[0]"


def test_malformed_inputs():
    with pytest.raises(InputError) as exc:
        SessionInput.loads("{")
    assert exc.value.path.startswith("line 1")
    with pytest.raises(InputError) as exc:
        SessionInput.from_json({"ring": {"variables": ["x"]}, "modules": {"M": {"degrees": [0], "presentation": [["x + x^2"]]}}}).build()
    assert exc.value.path == "modules.M.presentation[0][0]"
    with pytest.raises(InputError) as exc:
        run(fixture("koszul-kxy"), "grade", {"M": "nope"})
    assert exc.value.path == "params.M"


def test_unknown_fixture(capsys):
    code, rep = call(capsys, "fixtures", "nope")
    assert code == EXIT_INPUT and rep["path"] == "fixture_name"


def test_truncation_exit_code():
    rep, code = run(fixture("koszul-kxy"), "resolution", {"M": "k"}, degree_cap=1)
    assert code == EXIT_TRUNCATED and "truncated" in rep["result"]


def test_determinism(capsys):
    argv = ["horizontal", "--fixture", "artinian-level1", "--phi", "k+R->k"]
    _, a = call(capsys, *argv)
    _, b = call(capsys, *argv)
    assert strip_timing(a) == strip_timing(b)


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("GRADELINK_SEED", "17")
    _, rep = call(capsys, "stability", "--fixture", "artinian-level1", "--M", "k+R", "--g", "0")
    assert rep["params"]["seed"] == 17
    assert rep["result"]["stability"]["status"] == "unstable"


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "gradelink", "grade", "--fixture", "koszul-kxy", "--M", "k"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["grade"] == 2
