"""Command line surface: JSON and table output, exit codes, expectations."""

import json
import shutil
import subprocess
import sys

import pytest

from coxhom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_info_json(capsys):
    d = run_json(capsys, "info", "--type", "B3")
    assert d["order"] == 48
    assert d["rank"] == 3
    assert d["reflections"] == 9
    assert d["coxeter_number"] == 6
    assert d["center_size"] == 2
    assert d["xi_trivial"] is True
    assert d["conjugacy_classes"] == 10
    assert len(d["longest_word"]) == 9


def test_info_table(capsys):
    code, out, err = run(capsys, "info", "--type", "A2")
    assert code == 0
    assert "order" in out and "6" in out


def test_info_bad_type(capsys):
    code, out, err = run(capsys, "info", "--type", "Q9")
    assert code == 1
    assert "error" in err


def test_unknown_subcommand(capsys):
    code, out, err = run(capsys, "frobnicate")
    assert code != 0


def test_exists_proper(capsys):
    d = run_json(capsys, "exists-proper", "--type", "I2:6")
    assert d["exists"] is True
    assert d["witness"] is not None
    d = run_json(capsys, "exists-proper", "--type", "I2:8")
    assert d["exists"] is False
    assert d["witness"] is None


def test_classify(capsys):
    d = run_json(capsys, "classify", "--type", "I2:6", "--mode", "equivalence")
    assert d["proper_count"] == 1
    assert len(d["classes"]) >= 1


def test_catalog(capsys):
    d = run_json(capsys, "catalog", "--type", "H3")
    names = [e["name"] for e in d["entries"]]
    assert names == sorted(names)
    assert set(names) == {"mu_prime", "mu_second", "nu3", "nu4"}


def test_obstruct(capsys):
    d = run_json(capsys, "obstruct", "--type", "I2:8", "--map", "nu1")
    rows = d["rows"]
    assert len(rows) == 1
    assert rows[0]["verdict"] == "Obstructed"
    assert rows[0]["certificate_ok"] is True
    assert rows[0]["certificate_size"] >= 1


def test_obstruct_standard(capsys):
    d = run_json(capsys, "obstruct", "--type", "B3", "--map", "standard")
    assert d["rows"][0]["verdict"] == "NoParityObstruction"


def test_obstruct_unknown_map(capsys):
    code, out, err = run(capsys, "obstruct", "--type", "B3", "--map", "nosuch")
    assert code == 1


def test_theorem31(capsys):
    d = run_json(capsys, "theorem31", "--type", "I2:8")
    assert d["vacuous"] is False
    assert all(r["verdict"] == "Obstructed" for r in d["rows"])


def test_h3_pipeline(capsys):
    d = run_json(capsys, "h3")
    assert d["verdicts"]["x1"] == 600
    assert d["verdicts"]["x2"] == 18
    assert d["verdicts"]["x3"] == 4


def test_bn_verify(capsys):
    d = run_json(capsys, "bn-verify", "--rank", "3")
    assert d["verified"] is True
    assert d["graph"] == "B3"


def test_preserves_coloured(capsys):
    d = run_json(capsys, "preserves-coloured", "--type", "B3", "1,1", "2,2", "3,3")
    assert d["preserves"] is True
    code, out, err = run(capsys, "preserves-coloured", "--type", "B3", "1,1", "2,2")
    assert code == 1  # word count must match the rank


def test_out_and_expect_round_trip(tmp_path, capsys):
    target = tmp_path / "info.json"
    code, _, err = run(
        capsys, "info", "--type", "A3", "--format", "json", "--out", str(target)
    )
    assert code == 0
    saved = json.loads(target.read_text())
    assert saved["order"] == 24

    code, _, err = run(
        capsys, "info", "--type", "A3", "--format", "json",
        "--expect", str(target),
    )
    assert code == 0

    saved["order"] = 25
    target.write_text(json.dumps(saved))
    code, _, err = run(
        capsys, "info", "--type", "A3", "--format", "json",
        "--expect", str(target),
    )
    assert code == 2
    assert "mismatch" in err


def test_expect_unreadable(tmp_path, capsys):
    code, _, err = run(
        capsys, "info", "--type", "A3",
        "--expect", str(tmp_path / "missing.json"),
    )
    assert code == 1


def test_json_output_is_stable(capsys):
    a = run_json(capsys, "catalog", "--type", "B3")
    b = run_json(capsys, "catalog", "--type", "B3")
    assert a == b


def test_console_script_installed():
    exe = shutil.which("coxhom")
    if exe is None:
        pytest.skip("entry point not on PATH in this environment")
    out = subprocess.run(
        [exe, "info", "--type", "A1", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["order"] == 2


def test_module_invocation():
    out = subprocess.run(
        [sys.executable, "-m", "coxhom.cli", "info", "--type", "A1"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
