from pathlib import Path

import pytest

from sftperturb.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main

DATA = Path(__file__).resolve().parent.parent / "data" / "shifts"
FULL2 = str(DATA / "full2.txt")
GOLDEN = str(DATA / "golden.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", str(DATA / "cycle3.txt"))
    assert code == EXIT_OK
    assert "period: 3" in out and "cycle: true" in out


def test_entropy(capsys):
    code, out, _ = run(capsys, "entropy", GOLDEN)
    assert code == EXIT_OK
    assert "lambda0: 1.618033988750" in out and "rho: 1.272019649514" in out


def test_forbid(capsys):
    code, out, _ = run(capsys, "forbid", FULL2, "-w", "aaa", "-w", "bbb")
    assert code == EXIT_OK
    assert "X: t^4 - t^2 - 2*t - 1" in out
    assert "lambda1: 1.618033988750" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", FULL2, "-w", "aaba", "-w", "aabb")
    assert code == EXIT_OK and "CaseA" in out


def test_scan_writes_csv_and_meta(capsys, tmp_path):
    out_path = tmp_path / "scan.csv"
    code, _, err = run(capsys, "scan", GOLDEN, "--mode", "two", "--kmin", "2", "--kmax", "3", "--out", str(out_path))
    assert code == EXIT_OK
    assert out_path.read_text().startswith("k,w1,w2")
    assert (tmp_path / "scan.csv.meta.json").exists()
    assert "lambda1>=rho" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", GOLDEN, "--kmax", "3")
    assert code == EXIT_OK and "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ["validate", "/nonexistent/shift.txt"],
    ["forbid", GOLDEN, "-w", "abb"],
    ["classify", FULL2, "-w", "aaa"],
    ["forbid", FULL2, "-w", "aaa", "-w", "aaa"],
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and err.startswith("error:")


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_INPUT, EXIT_VERIFY}) == 3
