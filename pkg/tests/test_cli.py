"""Tests for the command line interface."""

import json
import logging

import pytest

from src.cli import main
from src.config import config


class TestTableCommand:
    """Test cases for qschur table."""

    def test_build(self, capsys):
        """Test that a small table is built into the cache."""
        assert main(["table", "--n", "2", "--r", "1"]) == 0
        assert "4 basis elements" in capsys.readouterr().out
        assert config.table_path(2, 1).exists()

    def test_budget_exit_code(self):
        """Test that an oversized table exits non-zero."""
        assert main(["table", "--n", "2", "--r", "40"]) == 1

    def test_no_command(self):
        """Test that no subcommand prints help and fails."""
        assert main([]) == 1


class TestVerifyCommand:
    """Test cases for qschur verify."""

    def test_binomials(self, capsys):
        """Test a passing suite."""
        assert main(["verify", "binomials", "--ell", "2"]) == 0
        out = capsys.readouterr().out
        assert "PASS [binomials]" in out
        assert "FAIL" not in out

    def test_run_log(self, caplog, monkeypatch):
        """Test that the run log records per-suite counts."""
        monkeypatch.setattr(config, "log_format", "json")
        caplog.set_level(logging.INFO, logger="qschur")
        assert main(["verify", "binomials", "--ell", "2"]) == 0
        runs = [json.loads(rec.getMessage()) for rec in caplog.records if rec.getMessage().startswith("{")]
        outcome = next(run["outcome"] for run in runs if run.get("command") == "verify")
        assert outcome["passed"] is True
        assert outcome["suites"]["binomials"]["failed"] == 0
        assert outcome["suites"]["binomials"]["checks"] == outcome["checks"]

    def test_report(self, tmp_path):
        """Test that --out writes the Markdown and CSV report."""
        out = tmp_path / "report.md"
        assert main(["verify", "frobenius", "--n", "2", "--r", "1", "--ell", "2", "--out", str(out)]) == 0
        assert "All checks passed." in out.read_text(encoding="utf-8")
        assert out.with_suffix(".csv").exists()

    def test_bad_parameters(self):
        """Test that invalid parameters exit non-zero."""
        assert main(["verify", "fm", "--p", "4", "--r", "1"]) == 1


class TestMapCommand:
    """Test cases for qschur map."""

    def test_splitting(self, tmp_path):
        """Test the exported matrix of c for S(2, 1) -> S(2, 2)."""
        out = tmp_path / "c.json"
        assert main(["map", "c", "--n", "2", "--r", "1", "--ell", "2", "--out", str(out)]) == 0
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["kind"] == "c"
        assert data["l"] == 4
        assert len(data["leading_terms"]) == 4
        assert data["leading_terms"]["1,0|0,0"] == "2,0|0,0"

    def test_frobenius_default_path(self):
        """Test that Fr is written to the outputs directory by default."""
        assert main(["map", "fr", "--n", "2", "--r", "1", "--ell", "2"]) == 0
        assert (config.outputs_dir / "map_fr_n2_r1_ell2.json").exists()


if __name__ == "__main__":
    pytest.main([__file__])
