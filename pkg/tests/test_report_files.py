"""
Tests for config reading, report writing and the summary lines.
"""
import json
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'reports'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from reports.report_files import ReportFiles, render_report, summarize


@pytest.fixture
def files(tmp_path: Path) -> ReportFiles:
    """Report files rooted in a temporary directory."""
    return ReportFiles(str(tmp_path))


def test_read_config(files: ReportFiles, tmp_path: Path):
    """Tests reading a config relative to the base directory."""
    # pylint: disable=redefined-outer-name
    (tmp_path / "problem.json").write_text('{"schema_version": 1}', encoding="utf-8")
    assert files.read_config("problem.json") == '{"schema_version": 1}'
    assert files.read_config(" 'problem.json' ") == '{"schema_version": 1}'


def test_read_missing_config(files: ReportFiles):
    """Tests that a missing config raises FileNotFoundError."""
    # pylint: disable=redefined-outer-name
    with pytest.raises(FileNotFoundError, match="does not exist"):
        files.read_config("absent.json")
    with pytest.raises(ValueError, match="Empty file name"):
        files.read_config("  ")


def test_write_report_creates_directories(files: ReportFiles, tmp_path: Path):
    """Tests that the report lands under new parent directories as sorted JSON."""
    # pylint: disable=redefined-outer-name
    message = files.write_report("out/run/report.json", {"seed": 0, "command": "validate"})
    text = (tmp_path / "out" / "run" / "report.json").read_text(encoding="utf-8")
    assert "Wrote" in message
    assert text.index('"command"') < text.index('"seed"')
    assert json.loads(text) == {"seed": 0, "command": "validate"}


def test_render_is_canonical():
    """Tests that key order does not change the rendered text."""
    assert render_report({"b": 1, "a": [1, 2]}) == render_report({"a": [1, 2], "b": 1})
    assert render_report({"label": "ε"}).endswith('"ε"\n}\n')


def test_summarize_success():
    """Tests the summary of a passing cohomology run."""
    report = {
        "command": "cohomology", "field": "rationals", "seed": 0,
        "validation": {"ok": True, "failures": []},
        "result": {"betti": [1, 0, 0, 1]},
        "checks": [{"name": "centralizer", "status": "pass"}, {"name": "bar", "status": "fail"}],
    }
    lines = summarize(report, 1)
    assert lines[0] == "Command: cohomology (field rationals, seed 0)"
    assert "Validation: ok" in lines
    assert "Betti: [1, 0, 0, 1]" in lines
    assert "Checks: 1/2 passed" in lines
    assert "  FAILED bar" in lines
    assert lines[-1] == "Exit code: 1"


def test_summarize_failures_and_truncation():
    """Tests validation failures and truncated residuals in the summary."""
    report = {
        "command": "symmetric", "field": "rationals", "seed": 2,
        "validation": {"ok": False, "failures": [{"check": "jacobi", "witness": "(x, y, z)"}]},
        "result": {"homology": {"direction": "homology", "degrees": [{"residual": 0}, {"residual": 1}]}},
    }
    lines = summarize(report, 1)
    assert "Validation: 1 failure(s)" in lines
    assert "  jacobi at (x, y, z)" in lines
    assert "Truncated homology residuals: [0, 1]" in lines
