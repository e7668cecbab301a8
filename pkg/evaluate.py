"""
Script for running the known-answer fixture suite: each dataset line names
a config under fixtures/, a command and the report values it must produce.
"""
# Standard library imports
import json
from pathlib import Path
from typing import Any, Dict

# Local application imports
from reports.report_files import ReportFiles
from runner.config import ConfigError, build_problem, parse_config, resolve_seed
from runner.runner import ProblemRunner

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def lookup(report: Dict[str, Any], path: str) -> Any:
    """Follows a dotted path through nested dicts and lists; integer parts index lists."""
    node: Any = report
    for part in path.split("."):
        if isinstance(node, list):
            node = node[int(part)]
        else:
            node = node[part]
    return node


def _run_single_test(case: Dict[str, Any], fixtures: Path) -> Dict[str, Any]:
    """Runs one case and compares the report against its expectations."""
    command = case["command"]
    print(f"Case: {case['name']} ({case['config']}, {command})")
    files = ReportFiles(str(fixtures))
    try:
        config = parse_config(files.read_config(case["config"]))
        problem = build_problem(config, case.get("field"))
        runner = ProblemRunner(problem, resolve_seed(config), case.get("nmax"))
        outcome = runner.run(command)
        report, exit_code = outcome.report, outcome.exit_code
    except (ConfigError, FileNotFoundError) as exc:
        report, exit_code = {}, 2
        print(f"Error: {exc}")

    mismatches = []
    if exit_code != case.get("expected_exit", 0):
        mismatches.append(f"exit code {exit_code}, expected {case.get('expected_exit', 0)}")
    for expectation in case.get("expected", []):
        try:
            actual = lookup(report, expectation["path"])
        except (KeyError, IndexError, ValueError):
            actual = None
        if actual != expectation["value"]:
            mismatches.append(f"{expectation['path']} = {actual!r}, expected {expectation['value']!r}")

    test_passed = not mismatches
    if test_passed:
        print("✅ Result: PASSED")
    else:
        print(f"❌ Result: FAILED ({'; '.join(mismatches)})")
    return {"name": case["name"], "mismatches": mismatches, "passed": test_passed}


def _print_summary(total_cases: int, passed_count: int):
    """Prints the final evaluation summary."""
    accuracy = (passed_count / total_cases) * 100 if total_cases else 0
    print("\n--- 🏁 Evaluation Finished ---")
    print(f"Total Test Cases: {total_cases}")
    print(f"Passed: {passed_count}")
    print(f"Accuracy: {accuracy:.2f}%")


def run_evaluation(fixtures: Path = FIXTURES) -> int:
    """
    Loads the evaluation dataset, runs every case and reports the accuracy.
    Returns the number of passed cases.
    """
    print("🚀 Starting fixture evaluation...")

    dataset_path = fixtures / "evaluation_dataset.jsonl"
    if not dataset_path.exists():
        print(f"❌ Error: Evaluation dataset not found at {dataset_path}")
        return 0

    with open(dataset_path, "r", encoding="utf-8") as f:
        test_cases = [json.loads(line) for line in f if line.strip()]

    results = []
    for i, case in enumerate(test_cases):
        print(f"\n--- Running Test Case {i+1}/{len(test_cases)} ---")
        results.append(_run_single_test(case, fixtures))

    passed_count = sum(1 for r in results if r["passed"])
    _print_summary(len(test_cases), passed_count)
    return passed_count


if __name__ == "__main__":
    run_evaluation()
