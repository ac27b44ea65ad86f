import subprocess
import sys

import pytest

from incgamma import cli


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_survey_writes_csv(tmp_path, capsys):
    out = tmp_path / "f0.csv"
    code, _, err = run(["survey", "--method", "power_series", "--m", "0", "--param", "n=30",
                        "--re-min", "-15", "--re-max", "15", "--im-min", "0", "--im-max", "15",
                        "--step", "0.25", "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "re,im,d,terms,flags" and len(lines) == 1 + 121 * 61
    assert "power_series m=0 points=7381" in err


def test_survey_to_stdout(capsys):
    code, out, _ = run(["survey", "--method", "oracle", "--re-min", "0", "--re-max", "1",
                        "--im-max", "1", "--step", "1"], capsys)
    assert code == 0 and len(out.splitlines()) == 5


def test_gridgen_then_terms(tmp_path, capsys):
    grid = tmp_path / "grid.fmg"
    code, _, _ = run(["gridgen", "--stride", "3", "--jmax", "30", "--out", str(grid)], capsys)
    assert code == 0 and grid.read_bytes().startswith(b"FMGRID/1\n")
    code, out, err = run(["terms", "--method", "gridtaylor", "--grid-file", str(grid), "--m", "0",
                          "--target-digits", "14", "--step", "0.5"], capsys)
    assert code == 0
    terms = [int(line.split(",")[3]) for line in out.splitlines()[1:]]
    assert max(terms) <= 25
    assert "max_terms=%d" % max(terms) in err


def test_compare_deterministic(capsys):
    args = ["compare", "--method", "gridtaylor", "--method", "gauss_jacobi:n=20", "--step", "3"]
    code, first, _ = run(args, capsys)
    assert code == 0
    _, second, _ = run(args, capsys)
    assert first == second
    assert "gauss_jacobi(n=20)" in first


def test_tables_verify(capsys):
    code, out, _ = run(["tables", "--verify", "gauss-jacobi"], capsys)
    assert code == 0 and "ok" in out and "FAIL" not in out


def test_methods_listing(capsys):
    code, out, _ = run(["methods"], capsys)
    assert code == 0 and "gridtaylor" in out and "salzer" in out


@pytest.mark.parametrize("args, code", [
    (["survey", "--method", "oracle", "--bogus"], 2),
    (["survey", "--method", "nope"], 2),
    (["survey", "--method", "power_series", "--param", "zz=1"], 2),
    (["survey", "--method", "power_series", "--param", "n=abc"], 2),
    (["compare", "--method", "oracle"], 2),
    (["survey", "--method", "oracle", "--step", "0"], 3),
    (["survey", "--method", "oracle", "--re-min", "-60"], 3),
    (["survey", "--method", "spline", "--m", "3"], 3),
    (["gridgen", "--stride", "3", "--out", "/nonexistent/dir/g.fmg"], 4),
    (["terms", "--method", "gridtaylor", "--grid-file", "/nonexistent.fmg"], 4),
    ([], 2),
])
def test_exit_codes(args, code, capsys):
    got, _, err = run(args, capsys)
    assert got == code
    assert err


def test_bad_grid_file_is_io_error(tmp_path, capsys):
    p = tmp_path / "bad.fmg"
    p.write_bytes(b"not a grid\n1 0 0 0 0 25\nCRC32 00000000\n")
    code, _, err = run(["terms", "--method", "gridtaylor", "--grid-file", str(p), "--step", "5"],
                       capsys)
    assert code == 4 and "magic" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "incgamma", "survey", "--method", "oracle",
                           "--unknown"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
