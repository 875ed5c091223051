import csv
import hashlib
import subprocess
import sys

import numpy as np
import pytest

from numrad.cli import main
from numrad.linalg import save_matrix


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, M in {"I": np.eye(2), "J": [[0, 1], [0, 0]], "D": np.diag([1.0, 4.0])}.items():
        paths[name] = str(tmp_path / f"{name}.json")
        save_matrix(M, paths[name])
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    paths["bad"] = str(bad)
    x = tmp_path / "x.json"
    x.write_text('{"n": 2, "entries": [[0.7071067811865476, 0], [0.7071067811865476, 0]]}')
    paths["x"] = str(x)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_radius_identity(capsys, files):
    code, out, _ = run(capsys, "radius", files["I"])
    assert code == 0
    assert out.startswith("w = 1 ± ")
    err = float(out.split("±")[1].split()[0])
    assert err <= 1e-8


def test_radius_jordan(capsys, files):
    code, out, _ = run(capsys, "radius", files["J"])
    value = float(out.split()[2])
    assert code == 0 and abs(value - 0.5) <= 1e-8
    assert "at theta = " in out


def test_radius_malformed(capsys, files):
    code, _, err = run(capsys, "radius", files["bad"])
    assert code == 2 and "malformed JSON" in err


def test_radius_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "radius", str(tmp_path / "none.json"))
    assert code == 2


def test_check_r11_equality(capsys, files):
    code, out, _ = run(capsys, "check", "--id", "R11", "--A", files["I"], "--B", files["I"], "--r", "1")
    assert code == 0
    assert out.strip() == "R11[bound] lhs=1 rhs=1 slack=0 OK"


def test_check_r16_precondition(capsys, files):
    argv = ["check", "--id", "R16", "--A", files["I"], "--B", files["I"], "--X", files["J"], "--r", "1"]
    code, _, err = run(capsys, *argv)
    assert code == 2 and "r ≥ 2 violated" in err


def test_check_r05_jordan(capsys, files):
    code, out, _ = run(capsys, "check", "--id", "R05", "--A", files["J"], "--r", "1")
    slack = float(out.split("slack=")[1].split()[0])
    assert code == 0 and out.rstrip().endswith("OK")
    assert slack == pytest.approx(0.25, abs=1e-8)


def test_check_vector_operand(capsys, files):
    code, out, _ = run(capsys, "check", "--id", "mccarthy", "--A", files["D"], "--x", files["x"], "--r", "2")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 2
    assert lines[0].startswith("R20[convex] lhs=6.2")


def test_check_violation_exit_code(capsys, files, tmp_path):
    B = tmp_path / "B.json"
    X = tmp_path / "X.json"
    save_matrix(np.diag([1.0, -1.0]), B)
    save_matrix([[1, 1], [0, 1]], X)
    code, out, _ = run(capsys, "check", "--id", "R18", "--A", files["I"], "--B", str(B), "--X", str(X))
    assert code == 1 and "VIOLATION" in out


def test_check_unknown_id(capsys, files):
    code, _, err = run(capsys, "check", "--id", "R42", "--A", files["I"])
    assert code == 2 and "unknown checker" in err


def test_check_missing_operand(capsys, files):
    code, _, err = run(capsys, "check", "--id", "R04", "--A", files["I"])
    assert code == 2 and "missing operand B" in err


def test_range_identity(capsys, files):
    code, out, _ = run(capsys, "range", files["I"], "--points", "5")
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and rows[0] == ["theta", "re", "im"] and len(rows) == 6
    assert all(float(r[1]) == pytest.approx(1.0) and abs(float(r[2])) < 1e-15 for r in rows[1:])


def test_range_jordan_file(capsys, files, tmp_path):
    out_path = tmp_path / "b.csv"
    code, _, _ = run(capsys, "range", files["J"], "--points", "360", "--out", str(out_path))
    rows = list(csv.DictReader(open(out_path)))
    assert code == 0 and len(rows) == 360
    mod = max(abs(complex(float(r["re"]), float(r["im"]))) for r in rows)
    assert mod == pytest.approx(0.5, abs=1e-6)


def test_range_too_few_points(capsys, files):
    code, _, _ = run(capsys, "range", files["I"], "--points", "2")
    assert code == 2


def test_fuzz_and_summarize(capsys, tmp_path):
    out = tmp_path / "f.csv"
    code, stdout, _ = run(capsys, "fuzz", "--trials", "3", "--dims", "2-3", "--checkers", "R01,R23", "--out", str(out))
    assert code == 0 and "R01" in stdout and "R23" in stdout
    code2, stdout2, _ = run(capsys, "summarize", str(out))
    assert code2 == 0 and stdout2 == stdout


def test_fuzz_violation_exit(capsys, tmp_path):
    out = tmp_path / "f.json"
    argv = ["fuzz", "--trials", "8", "--dims", "2", "--checkers", "R26", "--format", "json", "--out", str(out)]
    code, _, _ = run(capsys, *argv)
    assert code == 1
    assert run(capsys, "summarize", str(out))[0] == 1


def test_fuzz_zero_trials(capsys, tmp_path):
    code, _, err = run(capsys, "fuzz", "--trials", "0", "--out", str(tmp_path / "f.csv"))
    assert code == 2 and "trials" in err


def test_fuzz_same_seed_same_digest(capsys, tmp_path):
    digests = []
    for k in range(2):
        path = tmp_path / f"f{k}.csv"
        run(capsys, "fuzz", "--trials", "4", "--dims", "2,4", "--seed", "42", "--out", str(path))
        digests.append(hashlib.sha256(path.read_bytes()).hexdigest())
    assert digests[0] == digests[1]


def test_unknown_flag_rejected(capsys, files):
    with pytest.raises(SystemExit) as exc:
        main(["radius", files["I"], "--bogus"])
    assert exc.value.code == 2


def test_no_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "numrad.cli", "radius", files["J"]], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("w = 0.5")
