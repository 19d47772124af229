import csv
import io
import subprocess
import sys

import pytest

from besselphase import __version__
from besselphase.cli import ConfigError, RunConfig, main, parse_complex, run


def run_rows(cfg: RunConfig) -> tuple[int, str, list[dict]]:
    buf = io.StringIO()
    status = run(cfg, buf)
    text = buf.getvalue()
    lines = text.splitlines()
    assert lines[0].startswith("# besselphase " + __version__)
    return status, text, list(csv.DictReader(lines[1:]))


@pytest.mark.parametrize(
    "text,value",
    [("50", 50.0), ("50-10i", 50 - 10j), ("100+20i", 100 + 20j), ("1e6", 1e6), ("-2.5+0.5i", -2.5 + 0.5j), ("3i", 3j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["abc", "1+", "nan", "inf"])
def test_parse_complex_rejects(text):
    with pytest.raises(ConfigError):
        parse_complex(text)


def test_eval_command(capsys):
    assert main(["eval", "--nu", "0.5", "--z", "10"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("#") and "command=eval" in out[0]
    row = next(csv.DictReader(out[1:]))
    assert float(row["j_re"]) == pytest.approx(-0.13726373575505048, rel=1e-15)
    assert row["modulus_terms"] == "1" and row["error"] == ""


def test_eval_extended(capsys):
    assert main(["eval", "--nu", "50", "--z", "100", "--precision", "128"]) == 0
    row = next(csv.DictReader(capsys.readouterr().out.splitlines()[1:]))
    assert len(row["j_re"]) > 30


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--nu", "abc", "--z", "1"],
        ["eval", "--nu", "1"],
        ["table1", "--precision", "10"],
        ["table1", "--ratio", "-1"],
        ["kummer", "--nu", "1+2i"],
        ["eval", "--nu", "1", "--z", "2", "--terms", "0"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_command_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["plot"])
    assert exc.value.code == 2


def test_row_failure_exit_1():
    status, _, rows = run_rows(RunConfig("eval", nu=10.0, z=10 + 800j))
    assert status == 1
    assert rows[0]["error"].startswith("BesselOverflowError")


def test_table1_row():
    status, _, rows = run_rows(RunConfig("table1", nu=50.0, ratio=2.0))
    assert status == 0 and len(rows) == 1
    row = rows[0]
    assert (int(row["modulus_terms"]), int(row["phase_terms"])) == (24, 22)  # reference counts 23 / 22
    assert float(row["rel_err_j"]) < 4e-14 and float(row["rel_err_y"]) < 4e-14
    assert row["reference"] == "oracle"


def test_table1_large_order_counts():
    _, _, rows = run_rows(RunConfig("table1", nu=10000.0, ratio=1.1))
    row = rows[0]
    assert abs(int(row["modulus_terms"]) - 162) <= 0.3 * 162
    assert abs(int(row["phase_terms"]) - 133) <= 0.3 * 133
    assert row["reference"].startswith("extended")


def test_table1_complex_row():
    _, _, rows = run_rows(RunConfig("table1", nu=50 - 10j, ratio=10.0))
    assert float(rows[0]["rel_err_j"]) < 1e-13


def test_table_large_row():
    _, _, rows = run_rows(RunConfig("table-large", nu=1e6, ratio=2.0))
    assert 1e-13 < float(rows[0]["rel_err_j"]) < 1e-8


def test_figure_small_nu():
    status, _, rows = run_rows(RunConfig("figure-small-nu"))
    assert status == 0 and len(rows) == 100
    err = {float(r["nu"]): float(r["rel_err_j"]) for r in rows}
    assert err[5.0] < 1e-13
    assert err[0.1] > 1e4 * err[5.0]


def test_figure_arg():
    _, _, rows = run_rows(RunConfig("figure-arg"))
    assert len(rows) == 100 and float(rows[0]["theta"]) == 0.0
    assert float(rows[0]["rel_err_y"]) < 1e-13
    assert float(rows[-1]["rel_err_y"]) > 1e-6
    assert "near_branch_cut" in rows[-1]["warnings"]


def test_figure_phase():
    _, _, rows = run_rows(RunConfig("figure-phase"))
    assert len(rows) == 100
    gap = [abs(float(r["alpha_prime_jy"]) - 1) for r in rows]
    assert all(a > b for a, b in zip(gap, gap[1:]))
    for r in rows[5:]:
        assert float(r["alpha_prime_series"]) == pytest.approx(float(r["alpha_prime_jy"]), rel=1e-10)


def test_kummer_command_and_jobs_determinism():
    a = run_rows(RunConfig("kummer"))
    b = run_rows(RunConfig("kummer", jobs=2))
    assert a[0] == 0 and len(a[2]) == 12
    assert a[1].splitlines()[1:] == b[1].splitlines()[1:]


def test_out_file_and_module_entry(tmp_path):
    out = tmp_path / "k.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "besselphase", "kummer", "--nu", "20", "--ratio", "10", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    raw = out.read_bytes()
    assert raw.count(b"\r\n") == 3  # comment, header, one row
    assert raw.decode("utf-8").startswith("# besselphase")
