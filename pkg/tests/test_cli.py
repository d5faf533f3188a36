import csv
import io
import json
import math
import subprocess
import sys

import pytest

from zeta_audit.cli import RunConfig, emit_values, main

from conftest import ZEROS_FILE


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


class TestValues:
    def test_varpi_plain(self):
        code, text = run("varpi", "2.5")
        assert code == 0
        assert float(text) == pytest.approx(math.log(2) - 2, abs=1e-14)
        assert text.strip() == "-1.30685281944005"

    def test_psi_json(self):
        code, text = run("psi", "10.5", "--format", "json")
        assert code == 0
        assert json.loads(text)["psi"] == pytest.approx(math.log(2520), abs=1e-12)

    def test_global_flag_before_command(self):
        assert run("--format", "json", "psi", "10.5")[1] == run("psi", "10.5", "--format", "json")[1]

    def test_pi_csv(self):
        code, text = run("pi", "10", "--format", "csv")
        assert code == 0
        assert text == "pi\n4\n"

    def test_li(self):
        code, text = run("li", "10")
        assert float(text) == pytest.approx(5.12043572466980515, abs=1e-13)

    def test_zeta_plain_complex(self):
        code, text = run("zeta", "eval", "2", "0")
        re_, im_ = map(float, text.split())
        assert re_ == pytest.approx(math.pi**2 / 6, abs=1e-13) and im_ == 0

    def test_zeros_count(self):
        assert run("zeros", "count", "100", "--zeros", str(ZEROS_FILE)) == (0, "29\n")

    def test_zeros_band_json(self):
        code, text = run("zeros", "band", "100", "--format", "json")
        d = json.loads(text)
        assert d["N"] == 29 and d["in_band"] is True

    def test_induction(self):
        code, text = run("induction", "120.5", "--anchor", "100", "--format", "json")
        d = json.loads(text)
        assert d["points"][-1] == 120.5 and d["L0"] == 8

    def test_perron_varpi(self):
        code, text = run("perron", "varpi", "2.5", "--m", "1.5", "--T", "200")
        assert code == 0 and abs(float(text) - (math.log(2) - 2)) <= 0.05

    def test_wledger_plain_labels(self):
        code, text = run("perron", "wledger", "100.7", "50.2", "--m", "0.75", "--Tcheck", "21", "--no-zeta")
        assert code == 0
        assert text.splitlines()[0].startswith("W1 ")

    def test_emit_values_csv_complex(self):
        rows = list(csv.reader(io.StringIO(emit_values({"z": 1 + 2j}, "csv"))))
        assert rows == [["z_re", "z_im"], ["1", "2"]]


class TestAudit:
    def test_pass_exit_zero_json_default(self):
        code, text = run("audit", "run", "thm3", "--grid", "1000")
        assert code == 0
        d = json.loads(text)
        assert d["verdict"] == "pass" and d["violations"] == []

    def test_fail_exit_two(self):
        code, text = run("audit", "run", "P1-box", "--grid", "21")
        assert code == 2
        assert json.loads(text)["verdict"] == "fail"

    def test_csv_one_header(self):
        code, text = run("audit", "run", "table-varpi", "--format", "csv")
        lines = text.splitlines()
        assert code == 2
        assert lines[0].startswith("claim_id,") and sum(l.startswith("claim_id,") for l in lines) == 1
        assert len(lines) == 1 + len(json.loads(run("audit", "run", "table-varpi")[1])["violations"])

    def test_byte_identical(self):
        a = run("audit", "run", "prop5c", "--grid", "50")
        b = run("audit", "run", "prop5c", "--grid", "50")
        assert a == b

    def test_robin(self):
        code, text = run("audit", "robin", "5040", "5041", "--format", "plain")
        assert code == 2 and "verdict: fail" in text

    def test_lagarias(self):
        code, text = run("audit", "lagarias", "1", "1000")
        assert code == 0 and json.loads(text)["extras"]["equalities"] == [1]

    def test_list(self):
        code, text = run("audit", "list")
        assert code == 0 and "P1-box" in text.split()

    @pytest.mark.slow
    def test_all_worst_verdict(self):
        code, text = run("audit", "run", "all", "--grid", "11")
        d = json.loads(text)
        assert code == 2 and d["verdict"] == "fail"
        assert len(d["reports"]) > 30


class TestErrors:
    def test_unknown_claim(self, capsys):
        code, _ = run("audit", "run", "nope")
        assert code == 1
        assert "unknown claim" in capsys.readouterr().err

    def test_usage_error(self, capsys):
        assert run("psi")[0] == 1
        assert run("frobnicate")[0] == 1

    def test_missing_zeros(self, tmp_path, capsys):
        code, _ = run("zeros", "count", "100", "--zeros", str(tmp_path / "none.txt"))
        assert code == 1
        assert capsys.readouterr().err.startswith("zeta-audit:")

    def test_domain_error(self, capsys):
        code, _ = run("induction", "120", "--anchor", "100")
        assert code == 1 and "integer" in capsys.readouterr().err

    def test_experimental_gate(self):
        assert run("perron", "varpi", "100.5", "--m", "0.9", "--T", "100")[0] == 1


def test_zeros_env_resolution(tmp_path, monkeypatch):
    f = tmp_path / "z.txt"
    f.write_text("14.134725141734693\n21.022039638771555\n")
    monkeypatch.setenv("ZETA_AUDIT_ZEROS", str(f))
    assert run("zeros", "count", "20") == (0, "1\n")
    assert run("zeros", "count", "20", "--zeros", str(ZEROS_FILE)) == (0, "1\n")
    assert run("zeros", "count", "100", "--zeros", str(ZEROS_FILE)) == (0, "29\n")


def test_runconfig_defaults():
    cfg = RunConfig()
    assert cfg.format == "plain" and cfg.sieve_limit == 10**7 and cfg.precision_config().mode == "standard"


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "zeta_audit.cli", "varpi", "2.5"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "-1.30685281944005"
