import json
import subprocess
import sys

from krlib import cli, krset
from krlib.errors import TheoremCheckError


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "krlib.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc


def test_set_untwisted_example():
    proc = run_cli("set", "--algebra", "C3", "--node", "2", "--level", "2")
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == [
        {"weight": [0, 2, 0], "grade": 0},
        {"weight": [2, 0, 0], "grade": 1},
        {"weight": [0, 0, 0], "grade": 2},
    ]


def test_set_a_series_single_entry():
    proc = run_cli("set", "--algebra", "A2", "--node", "1", "--level", "3")
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == [{"weight": [3, 0], "grade": 0}]


def test_set_twisted_reports_g0():
    proc = run_cli("set", "--algebra", "A4~", "--node", "2", "--level", "4")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["g0"] == "B2"
    assert [e["grade"] for e in payload["set"]] == [0, 1, 2]
    # trailing marker and --twisted spell the same algebra
    alt = run_cli("set", "--algebra", "A4", "--twisted", "--node", "2", "--level", "4")
    assert json.loads(alt.stdout) == payload


def test_char_dim_polynomials():
    proc = run_cli("char", "--algebra", "C2", "--node", "1", "--level", "2")
    payload = json.loads(proc.stdout)
    assert payload["dim_poly"] == [10, 1]
    assert payload["dim_total"] == 11
    proc = run_cli("char", "--algebra", "B4", "--node", "3", "--level", "1")
    assert json.loads(proc.stdout)["dim_poly"] == [84, 9]


def test_char_twisted_three_pieces():
    proc = run_cli("char", "--algebra", "D4~", "--node", "2", "--level", "1")
    payload = json.loads(proc.stdout)
    assert payload["g0"] == "B3"
    assert payload["dim_poly"] == [21, 7, 1]
    assert len(payload["grades"]) == 3


def test_char_output_is_deterministic():
    a = run_cli("char", "--algebra", "C3", "--node", "2", "--level", "2").stdout
    b = run_cli("char", "--algebra", "C3", "--node", "2", "--level", "2").stdout
    assert a == b


def test_invalid_inputs_exit_2():
    assert run_cli("set", "--algebra", "Q7", "--node", "1", "--level", "1").returncode == 2
    assert run_cli("set", "--algebra", "C3", "--node", "9", "--level", "1").returncode == 2
    assert run_cli("set", "--algebra", "A2~", "--node", "2", "--level", "1").returncode == 2
    assert run_cli("nonsense").returncode == 2


def test_verify_chains_suite():
    proc = run_cli("verify", "chains", "--max-rank", "4")
    assert proc.returncode == 0
    assert "checks passed" in proc.stdout
    assert "FAIL" not in proc.stdout


def test_verify_homs_single_algebra():
    proc = run_cli("verify", "homs", "--algebra", "C3", "--node", "2")
    assert proc.returncode == 0
    assert "two-step Hom = (0,)" in proc.stdout


def test_verify_modforge_single_case():
    proc = run_cli("verify", "modforge", "--algebra", "C2", "--node", "1", "--level", "4")
    assert proc.returncode == 0
    assert "grades [0, 1, 2]" in proc.stdout


def test_verify_failure_exits_1(monkeypatch):
    real = krset.enumerate_chain

    def broken(rs, i, m0=None):
        raise TheoremCheckError("planted")

    monkeypatch.setattr(krset, "enumerate_chain", broken)
    code = cli.main(["verify", "chains", "--max-rank", "2"])
    assert code == 1


def test_verify_twisted_modforge_rejected():
    proc = run_cli("verify", "modforge", "--algebra", "A4~", "--node", "1")
    assert proc.returncode == 2


def test_in_process_main_matches_subprocess(capsys):
    code = cli.main(["set", "--algebra", "C2", "--node", "1", "--level", "2"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == [
        {"weight": [2, 0], "grade": 0},
        {"weight": [0, 0], "grade": 1},
    ]
