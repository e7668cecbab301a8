"""
Tests for the command-line front end and its exit codes.
"""
import json
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'cli'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from cli.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _write(tmp_path: Path, raw: dict) -> str:
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    return str(path)


def test_success_writes_report(tmp_path: Path, capsys):
    """Tests exit code 0 and the written report for sl2 cohomology."""
    out = tmp_path / "reports" / "sl2.json"
    code = main(["--config", str(FIXTURES / "sl2.json"), "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["result"]["betti"] == [1, 0, 0, 1]
    printed = capsys.readouterr().out
    assert "Betti: [1, 0, 0, 1]" in printed and "Exit code: 0" in printed


def test_flags_override_config(tmp_path: Path):
    """Tests --command, --nmax and --field on the command line."""
    out = tmp_path / "report.json"
    code = main(["--config", str(FIXTURES / "abelian3.json"), "--command", "homology", "--nmax", "1",
                 "--field", "fp:5", "--seed", "4", "--out", str(out)])
    report = json.loads(out.read_text(encoding="utf-8"))
    assert code == 0
    assert report["result"]["betti"] == [1, 3]
    assert report["field"] == "fp:5" and report["seed"] == 4


def test_validation_failure_exit(capsys):
    """Tests exit code 1 for a rejected cocycle."""
    assert main(["--config", str(FIXTURES / "bad_cocycle.json")]) == 1
    assert "failure(s)" in capsys.readouterr().out


def test_config_error_exit(tmp_path: Path, capsys):
    """Tests exit code 2 with the error location printed."""
    config = _write(tmp_path, {"schema_version": 1, "lie": {"dimension": 1, "brackets": [[0, 4, 0, "1"]]},
                               "command": "validate"})
    assert main(["--config", config]) == 2
    printed = capsys.readouterr().out
    assert "Config error:" in printed and "lie.brackets.0" in printed


def test_missing_command(tmp_path: Path):
    """Tests that a config without a command needs --command."""
    config = _write(tmp_path, {"schema_version": 1, "lie": {"dimension": 1}})
    assert main(["--config", config]) == 2
    assert main(["--config", config, "--command", "validate"]) == 0


def test_missing_file(tmp_path: Path, capsys):
    """Tests exit code 2 for a config that does not exist."""
    assert main(["--config", str(tmp_path / "absent.json")]) == 2
    assert "does not exist" in capsys.readouterr().out


def test_negative_nmax():
    """Tests that a negative --nmax is a config error."""
    assert main(["--config", str(FIXTURES / "sl2.json"), "--nmax", "-1"]) == 2


def test_unknown_command_choice():
    """Tests that argparse rejects commands outside the list."""
    with pytest.raises(SystemExit):
        main(["--config", str(FIXTURES / "sl2.json"), "--command", "integrate"])


def test_blank_config_name(capsys):
    """Tests exit code 2 for a blank --config."""
    assert main(["--config", " "]) == 2
    assert "Empty file name" in capsys.readouterr().out


def test_config_not_utf8(tmp_path: Path, capsys):
    """Tests exit code 2 for a config that is not UTF-8 text."""
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe{\x00")
    assert main(["--config", str(path)]) == 2
    assert "could not read the config" in capsys.readouterr().out


def test_report_path_is_a_directory(tmp_path: Path, capsys):
    """Tests exit code 2 when --out names an existing directory."""
    assert main(["--config", str(FIXTURES / "sl2.json"), "--out", str(tmp_path)]) == 2
    assert "could not write the report" in capsys.readouterr().out
