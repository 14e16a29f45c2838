import csv
import io
import json
import subprocess
import sys

import pytest

from ecrep.cli import main
from ecrep.numerics import make_context, parse_xreal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_text(capsys):
    code, out, _ = run(capsys, "count", "--p", "5", "--a", "1", "--b", "1", "--method", "naive")
    assert code == 0
    assert "n_p: 9" in out


def test_count_json_round_trip(capsys):
    code, out, _ = run(capsys, "count", "--p", "13", "--a", "1", "--b", "1", "--method", "thm3",
                       "--output", "json", "--bits", "128")
    assert code == 0
    record = json.loads(out)
    assert record["n_p"] == 18 and record["method"] == "thm3"
    assert record["hasse_ok"] is True and record["singular"] is False
    assert record["l_value"] == 2 and record["bits"] == 128
    residual = parse_xreal(record["residual"], make_context(128))
    assert residual < 1e-6


def test_count_singular_refused(capsys):
    code, _, err = run(capsys, "count", "--p", "7", "--a", "0", "--b", "0", "--method", "legendre")
    assert code == 2 and "SingularCurve" in err
    code, out, _ = run(capsys, "count", "--p", "7", "--a", "0", "--b", "0", "--method", "legendre",
                       "--include-singular", "--output", "json")
    assert code == 0 and json.loads(out)["singular"] is True


def test_precision_too_low_exit(capsys):
    code, _, err = run(capsys, "count", "--p", "13", "--a", "1", "--b", "1", "--method", "thm2", "--bits", "64")
    assert code == 2 and "PrecisionTooLow" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--p", "5", "--a", "1", "--b", "1"],
        ["count", "--p", "5", "--a", "1", "--b", "1", "--method", "bogus"],
        ["count", "--p", "5", "--a", "1", "--b", "1", "--method", "naive", "--bits", "32"],
        ["count", "--p", "5", "--a", "1", "--b", "1", "--method", "naive", "--output", "csv"],
        ["identity", "--p", "1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_invalid_modulus_exit_2(capsys):
    code, _, _ = run(capsys, "count", "--p", "9", "--a", "1", "--b", "1", "--method", "naive")
    assert code == 2


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "--p", "10", "--output", "json")
    record = json.loads(out)
    ctx = make_context(record["bits"])
    assert code == 0
    assert parse_xreal(record["abs_error"], ctx) < 1e-19


def test_gauss_and_fracpart(capsys):
    code, out, _ = run(capsys, "gauss", "--p", "7", "--m", "3", "--output", "json")
    assert code == 0 and parse_xreal(json.loads(out)["deviation"], make_context(192)) < 1e-40
    code, out, _ = run(capsys, "fracpart", "--p", "7", "--f", "30", "--output", "json")
    record = json.loads(out)
    assert code == 0 and record["floor"] == 4 and record["prop4_ok"] is True


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gauss", "--max-p", "13", "--output", "csv", "--bits", "128")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows and all(r["passed"] == "True" for r in rows)
    assert set(rows[0]) == {"suite", "case", "passed", "deviation", "tolerance"}


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "numerics", "--max-p", "30")
    assert code == 0 and out.startswith("PASS numerics")


def test_env_bits(capsys, monkeypatch):
    monkeypatch.setenv("ECREP_BITS", "160")
    code, out, _ = run(capsys, "gauss", "--p", "5", "--output", "json")
    assert code == 0 and json.loads(out)["bits"] == 160
    monkeypatch.setenv("ECREP_BITS", "lots")
    code, _, _ = run(capsys, "gauss", "--p", "5")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ecrep", "count", "--p", "5", "--a", "1", "--b", "1", "--method", "legendre",
         "--output", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n_p"] == 9
