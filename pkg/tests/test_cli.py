import json
import subprocess
import sys
from pathlib import Path

import pytest

from permpatterns.cli import main

from conftest import naive_class, naive_count

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_avoid_formats(capsys):
    code, out, _ = run(capsys, "avoid", "--basis", "1342", "--max-n", "6", "--format", "bfile")
    assert code == 0
    assert out == "1 1\n2 2\n3 6\n4 23\n5 103\n6 512\n"
    code, out, _ = run(capsys, "avoid", "--basis", "123", "--basis", "231", "--max-n", "5", "--format", "json")
    assert json.loads(out)["values"] == {"1": "1", "2": "2", "3": "4", "4": "7", "5": "11"}
    code, out, _ = run(capsys, "avoid", "--basis", "132", "--max-n", "4", "--format", "csv")
    assert out.splitlines() == ["n,value", "1,1", "2,2", "3,5", "4,14"]


def test_worker_count_does_not_change_output(capsys):
    a = run(capsys, "avoid", "--basis", "1324", "--max-n", "8", "--workers", "1")[1]
    b = run(capsys, "avoid", "--basis", "1324", "--max-n", "8", "--workers", "3")[1]
    assert a == b


def test_occur(capsys):
    code, out, _ = run(capsys, "occur", "--pattern", "21", "--basis", "132", "--max-n", "5", "--format", "bfile")
    want = "".join(f"{n} {sum(naive_count(p, (2, 1)) for p in naive_class([(1, 3, 2)], n))}\n" for n in range(1, 6))
    assert code == 0 and out == want


def test_polyclass_file(capsys):
    code, out, _ = run(capsys, "polyclass", str(DATA / "av123_231.pegs"), "--format", "json", "--max-n", "6")
    rec = json.loads(out)
    assert code == 0
    assert rec["counts"] == [1, 2, 4, 7, 11, 16]
    assert rec["binomial_coefficients"] == [1, 0, 1]
    assert rec["gf_numerator"] == [0, 1, -1, 1]


def test_ball_with_oracle(capsys):
    code, out, _ = run(capsys, "ball", "--op", "block_reversal", "--k", "2", "--oracle-n", "6", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert rec["binomial_coefficients"] == [8, -3, 1, 4, 4]
    assert all(row["agree"] for row in rec["oracle"])


def test_series_and_biject(capsys):
    assert run(capsys, "series", "catalan", "--order", "5")[1] == "1,1,2,5,14,42\n"
    assert run(capsys, "biject", "phi", "74352681")[1] == "uuduuududdudddud\n"
    assert run(capsys, "biject", "phi", "uuduuududdudddud")[1] == "7 4 3 5 2 6 8 1\n"
    code, _, err = run(capsys, "biject", "phi", "132")
    assert code == 2 and "132" in err


def test_stats(capsys, tmp_path):
    out_file = tmp_path / "s.json"
    code, out, _ = run(capsys, "stats", "25143", "--format", "json", "--out", str(out_file))
    assert code == 0 and out == ""
    rec = json.loads(out_file.read_text())
    assert rec["inversions"] == 5 and rec["min_gap"] == 2


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["avoid"], ["avoid", "--basis", "1x2"], ["series", "nope"],
    ["polyclass", "/nonexistent.pegs"], ["verify", "--suite", "99"], ["avoid", "--basis", "12", "--workers", "0"],
    ["series", "catalan", "--format", "bfile", "--order", "-"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "2")
    assert code == 0 and "[PASS]" in out
    code, out, _ = run(capsys, "verify", "--suite", "11")
    assert code == 1 and "[FAIL]" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "permpatterns", "series", "catalan", "--order", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1,1,2,5\n"
