"""
Tests for the command runner and the reports it assembles.
"""
import json
import sys
from pathlib import Path

import pytest

# Adds the project root to the path to allow importing 'runner'
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
from reports.report_files import render_report
from runner.config import ConfigError, Problem, build_problem, parse_config
from runner.runner import ProblemRunner

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _problem(name: str, **overrides) -> Problem:
    raw = json.loads((FIXTURES / name).read_text(encoding="utf-8"))
    for key, value in overrides.items():
        raw.setdefault("parameters", {})[key] = value
    return build_problem(parse_config(json.dumps(raw)))


def test_validate_fx_heis():
    """Tests that FX-HEIS passes validation with exit code 0 and no result block."""
    outcome = ProblemRunner(_problem("fx_heis.json")).run("validate")
    assert outcome.exit_code == 0
    assert outcome.report["validation"] == {"ok": True, "failures": []}
    assert "result" not in outcome.report


def test_rejected_cocycle():
    """Tests that a non-cocycle f gives exit code 1 and a witness."""
    outcome = ProblemRunner(_problem("bad_cocycle.json")).run("cohomology")
    assert outcome.exit_code == 1
    failures = outcome.report["validation"]["failures"]
    assert failures and "result" not in outcome.report


def test_abelian_cohomology_with_oracles():
    """Tests the Betti numbers of an abelian g of dimension 3 against every applicable oracle."""
    outcome = ProblemRunner(_problem("abelian3.json")).run("cohomology")
    assert outcome.exit_code == 0
    assert outcome.report["result"] == {"betti": [1, 3, 3, 1]}
    names = {check["name"] for check in outcome.report["checks"]}
    assert {"squares_to_zero", "chevalley_eilenberg", "centralizer"} <= names
    assert all(check["status"] == "pass" for check in outcome.report["checks"])


def test_compare_heisenberg():
    """Tests round trips and both directions on the Heisenberg Lie algebra."""
    outcome = ProblemRunner(_problem("heisenberg.json"), seed=5).run("compare")
    assert outcome.exit_code == 0
    assert outcome.report["result"] == {"betti": [1, 2, 2, 1], "homology_betti": [1, 2, 2, 1]}
    statuses = {check["status"] for check in outcome.report["checks"]}
    assert statuses == {"pass"}


def test_relative_compare_skips_round_trips():
    """Tests that compare relative to K != k reports the round trips as skipped."""
    outcome = ProblemRunner(_problem("t2_relative.json")).run("compare")
    skipped = [check for check in outcome.report["checks"] if check["status"] == "skipped"]
    assert [check["name"] for check in skipped] == ["round_trip"]
    assert outcome.report["result"]["betti"] == [1, 0, 0]


def test_truncated_regular_cohomology():
    """Tests that M = E gives a truncated block instead of Betti numbers."""
    outcome = ProblemRunner(_problem("fx_dual_regular.json")).run("cohomology")
    block = outcome.report["result"]["truncated"]
    assert block["direction"] == "cohomology"
    assert block["degrees"][0]["residual"] == 1


def test_cup_checks_pass():
    """Tests the cup laws and the bar oracle on FX-AB2 over F_10007."""
    outcome = ProblemRunner(_problem("fx_ab2_cup.json"), seed=7).run("cup")
    assert outcome.exit_code == 0
    names = [check["name"] for check in outcome.report["checks"]]
    assert "bar_cup[0]" in names and "leibniz[1]" in names
    assert set(outcome.report["result"]["first_product"]) == {"degrees", "values"}


def test_symmetric_weyl():
    """Tests the symmetric command on the Weyl algebra."""
    outcome = ProblemRunner(_problem("weyl.json")).run("symmetric")
    assert outcome.exit_code == 0
    result = outcome.report["result"]
    assert [d["residual"] for d in result["cohomology"]["degrees"]] == [1, 0, 0]
    assert [d["residual"] for d in result["homology"]["degrees"]] == [0, 0, 1]


def test_star_products_on_symmetric_problem():
    """Tests that cup and cap on a symmetric problem use the ★ products."""
    problem = _problem("weyl.json")
    for command in ("cup", "cap"):
        outcome = ProblemRunner(problem, seed=3).run(command)
        assert outcome.exit_code == 0
        assert any(check["name"].startswith("gamma_") for check in outcome.report["checks"])


def test_reports_are_deterministic():
    """Tests that equal inputs give byte-identical rendered reports."""
    first = ProblemRunner(_problem("fx_ab2_cup.json"), seed=11).run("cup")
    second = ProblemRunner(_problem("fx_ab2_cup.json"), seed=11).run("cup")
    assert render_report(first.report) == render_report(second.report)


def test_timing_is_optional():
    """Tests that timing appears only when requested."""
    assert "timing" not in ProblemRunner(_problem("sl2.json")).run("validate").report
    timed = ProblemRunner(_problem("sl2.json", include_timing=True)).run("validate")
    assert "seconds" in timed.report["timing"]


def test_unknown_command():
    """Tests that an unknown command is a config error."""
    with pytest.raises(ConfigError, match="unknown command"):
        ProblemRunner(_problem("sl2.json")).run("integrate")


def test_unsupported_combinations():
    """Tests that symmetric-only and finite-only commands refuse the other kind of problem."""
    with pytest.raises(ConfigError, match="symmetric block"):
        ProblemRunner(_problem("sl2.json")).run("symmetric")
    with pytest.raises(ConfigError, match="finite-dimensional"):
        ProblemRunner(_problem("weyl.json")).run("compare")
