import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from legendre_hp.cli import EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def result(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["tool"] == "legendre-hp"
    return doc["result"]


def test_sigma_both_equal(capsys):
    r = result(capsys, "sigma", "3", "2", "--both")
    assert r["flag"] == "equal"
    assert r["sigma_direct"] == r["sigma_closed"] == "-512/45045"


def test_sigma_zero(capsys):
    assert result(capsys, "sigma", "0", "0")["sigma_direct"] == "2/1"


def test_sigma_out_of_range(capsys):
    r = result(capsys, "sigma", "1", "5", "--both")
    assert r["sigma_closed"] is None
    assert "2m < n" in r["flag"]
    assert r["sigma_direct"] == "-4/15"


def test_usage_errors_exit_2(capsys):
    for bad in (["sigma", "x", "0"], ["sigma", "-1", "0"], ["scan", "--b", "3:2"]):
        with pytest.raises(SystemExit) as exc:
            main(bad)
        assert exc.value.code == EXIT_USAGE
    code, _, err = run(capsys, "s2m0", "0", "0")
    assert code == EXIT_USAGE and "nonzero" in err
    code, _, err = run(capsys, "sigma", "1", "1", "--format", "csv")
    assert code == EXIT_USAGE


def test_s2m0_delta(capsys):
    r = result(capsys, "s2m0", "0", "1", "1", "--m-max", "6")
    direct = [row["direct"] for row in r["rows"]]
    assert direct == ["0/1", "-1/1"] + ["0/1"] * 5
    assert all(row["agree"] in (True, None) for row in r["rows"])
    assert r["q"]["coeffs"] == {}


def test_s2m0_odd_part(capsys):
    r = result(capsys, "s2m0", "0", "1", "--m-max", "4")
    assert r["verdict"] == "not a Legendre MS"
    assert r["noodd"]["verdict"] == "fail"
    assert r["eventual_sign"] in ("positive", "negative")


def test_s2m0_identity_csv(capsys):
    code, out, _ = run(capsys, "s2m0", "1", "--m-max", "2", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["direct"] == "1/1"
    assert [r["direct"] for r in rows[1:]] == ["0/1", "0/1"]


def test_rationals_parse_exactly(capsys):
    r = result(capsys, "s2m0", "0.5", "-1/2", "--m-max", "1")
    assert r["p"]["coeffs"] == {"0": "1/2", "1": "-1/2"}


@pytest.mark.parametrize("coeffs,verdict,failed", [
    (["0", "2", "1"], "fail", "noodd"),
    (["0", "10", "11", "2", "1"], "fail", "classical_necessary"),
])
def test_check_fails(capsys, coeffs, verdict, failed):
    r = result(capsys, "check", *coeffs, "--corpus-degree", "3", "--grid", "-2:2")
    assert r["verdict"] == verdict
    assert failed in r["failed_tests"]


def test_check_delta_passes(capsys):
    r = result(capsys, "check", "0", "1", "1", "--corpus-degree", "4", "--grid", "-2:2")
    assert r["verdict"] == "pass"
    assert r["decomposition"]["odd_part_zero"]


def test_symbol_outputs(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    r = result(capsys, "symbol", "--b", "3", "--c", "0", "--points", str(pts))
    assert r["curve"]["order"] == 4
    assert r["curve"]["poly"]["coeffs"]["2,2"] == "17/1"
    lines = pts.read_text().splitlines()
    assert lines[0] == "x,y" and len(lines) - 1 == r["n_points"] > 0
    r = result(capsys, "symbol", "--from-h", "0", "1")
    assert r["curve"]["order"] == 2
    assert r["curve"]["poly"]["coeffs"] == {"1,1": "-2/1", "0,2": "-1/1", "2,2": "1/1"}
    code, _, _ = run(capsys, "symbol", "--b", "1")
    assert code == EXIT_USAGE


def test_fall(capsys):
    r = result(capsys, "fall", "2", "1", "3")
    assert r["certificate"].startswith("HP")
    assert r["interval"] == [-3, 6]
    assert r["factors"][0]["bates_yoshida"] is True
    r = result(capsys, "fall", "2", "1", "7")
    assert r["certificate"].startswith("none")
    assert r["factors"][0]["bates_yoshida"] is False


def test_break_and_scan_coarse(capsys, tmp_path):
    r = result(capsys, "break", "--c", "0", "--tol", "1/4", "--lines", "coarse")
    assert r["found"]
    out = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "scan", "--b", "2:4", "--c", "-1:0", "--steps", "1,1", "--lines", "coarse", "-o", str(out))
    assert code == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 6
    assert {r["verdict"] for r in rows} <= {"pass", "fail", "boundary-suspect"}
    assert [Fraction(r["c_exact"]) for r in rows[:3]] == [-1, -1, -1]


def test_scan_is_byte_identical(capsys):
    args = ("scan", "--b", "2:4", "--c", "0:0", "--steps", "1/2,1", "--lines", "coarse")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_conj2(capsys):
    r = result(capsys, "conj2", "3", "1", "--corpus-degree", "3", "--grid", "-1:1", "--lines", "coarse")
    assert r["order"] == 6
    assert "not a proof" in r["note"]
    code, _, _ = run(capsys, "conj2", "2", "2")
    assert code == EXIT_USAGE


def test_calibrate(capsys):
    r = result(capsys, "calibrate", "--lines", "coarse")
    assert r["ok"] and r["line_criterion"]["ok"]


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == EXIT_OK
    assert out.strip().endswith("all checks passed")


def test_selftest_reports_failure(capsys, monkeypatch):
    import legendre_hp.selftest as st

    monkeypatch.setattr(st, "CHECKS", [("broken", lambda: False)])
    code, out, _ = run(capsys, "selftest")
    assert code == EXIT_INCONSISTENT
    assert "FAIL  broken" in out


def test_inconsistency_exit_code(capsys, monkeypatch):
    import legendre_hp.cli as cli

    monkeypatch.setattr(cli, "sigma_closed", lambda m, n: Fraction(999))
    code, _, err = run(capsys, "sigma", "2", "1", "--both")
    assert code == EXIT_INCONSISTENT
    assert "consistency" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "legendre_hp", "sigma", "2", "1", "--format", "text"],
                          capture_output=True, text=True, env={**os.environ, "LEGENDRE_HP_THREADS": "1"})
    assert proc.returncode == 0
    assert "sigma_direct:" in proc.stdout
