import json
import subprocess
import sys

import pytest

from painleve_pw.cli import main, read_poly_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_formats(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv")
    assert code == 0 and out.startswith("case,parameters,")
    code, out, _ = run(capsys, "table", "--format", "json")
    assert json.loads(out)["schema_version"] == "1.0"


def test_verify_pw_all(capsys):
    code, out, _ = run(capsys, "verify-pw", "--all")
    assert code == 0 and "9/9 cases pass all checks" in out


def test_verify_pw_fails_on_broken_registry(tmp_path, capsys):
    # a registry whose quoted fiber at infinity is wrong for its cubic
    reg = tmp_path / "bad.json"
    reg.write_text(json.dumps({"schema_version": "1.0", "cases": [{
        "tag": "VI", "quadric": "x1^2 + x2^2 + x3^2 - x1 - 2*x2 - 3*x3 + 5",
        "expected_fiber": "E_8^(1)", "expected_singularities": []}]}))
    code, out, _ = run(capsys, "--registry", str(reg), "verify-pw")
    assert code == 1 and "FAIL" in out


def test_analyze_with_params(capsys):
    code, out, _ = run(capsys, "analyze", "II", "--param", "alpha=5")
    assert code == 0 and "alpha=5" in out and "P=W: yes" in out
    code, out, _ = run(capsys, "analyze", "VI", "--format", "json")
    assert json.loads(out)["case"] == "VI"


def test_analyze_bad_param(capsys):
    code, _, err = run(capsys, "analyze", "V", "--param", "s3=0")
    assert code == 2 and "s3" in err
    code, _, err = run(capsys, "analyze", "V", "--param", "s3")
    assert code == 2


def test_poly_files(tmp_path, capsys):
    f = tmp_path / "a3.txt"
    f.write_text("# chart of an A_3 point\nvariables: x0, x1, x2\nx1*x2 + x0^4\n")
    code, out, _ = run(capsys, "classify-singularity", str(f))
    assert code == 0 and "type: A_3" in out
    code, out, _ = run(capsys, "milnor", str(f))
    assert code == 0 and "milnor: 3" in out


def test_non_isolated_file(tmp_path, capsys):
    f = tmp_path / "line.txt"
    f.write_text("variables: x0, x1, x2\nx1*x2\n")
    code, _, err = run(capsys, "milnor", str(f))
    assert code == 2 and "non-isolated" in err


def test_variables_are_inferred(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("u*v + w^3\n")
    assert read_poly_file(f).variables == ("u", "v", "w")


def test_kodaira_class(capsys):
    code, out, _ = run(capsys, "kodaira-class", "0,2,0,1")
    assert code == 0 and "fiber: IV" in out
    code, out, _ = run(capsys, "kodaira-class", "2L")
    assert "fiber: I_2" in out
    code, _, err = run(capsys, "kodaira-class", "L^2")
    assert code == 2 and "no supported" in err


def test_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PW_OUTPUT_DIR", str(tmp_path / "out"))
    code, out, _ = run(capsys, "table", "--format", "latex")
    assert code == 0
    assert (tmp_path / "out" / "table.tex").read_text() == out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "painleve_pw.cli", "verify-pw", "I"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1/1 cases" in proc.stdout
