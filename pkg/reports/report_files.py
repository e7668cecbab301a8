"""
Reading problem configs and writing reports: deterministic JSON text
(sorted keys, two-space indentation) and a short human summary.
"""
# Standard library imports
import json
from pathlib import Path
from typing import Any, Dict, List


class ReportFiles:
    """Config and report file operations relative to a base directory."""

    def __init__(self, base_path: str = "."):
        self.base_path = Path(base_path).resolve()

    def _resolve(self, filename: str) -> Path:
        """Resolves a filename against the base directory; absolute paths are kept."""
        cleaned = filename.strip().strip("'\" ")
        if not cleaned:
            raise ValueError("Empty file name.")
        candidate = Path(cleaned)
        return candidate if candidate.is_absolute() else (self.base_path / candidate).resolve()

    def read_config(self, filename: str) -> str:
        """Reads the text of a config file."""
        p = self._resolve(filename)
        if not p.is_file():
            raise FileNotFoundError(f"The config file '{filename}' does not exist.")
        return p.read_text(encoding="utf-8")

    def write_report(self, filename: str, report: Dict[str, Any]) -> str:
        """Writes the rendered report, creating parent directories."""
        p = self._resolve(filename)
        p.parent.mkdir(parents=True, exist_ok=True)
        text = render_report(report)
        p.write_text(text, encoding="utf-8")
        return f"Wrote {len(text)} characters to '{filename}'."


def render_report(report: Dict[str, Any]) -> str:
    """Canonical text: equal reports give byte-identical files."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def summarize(report: Dict[str, Any], exit_code: int) -> List[str]:
    """A few lines for standard output."""
    lines = [f"Command: {report.get('command')} (field {report.get('field')}, seed {report.get('seed')})"]
    validation = report.get("validation", {})
    failures = validation.get("failures", [])
    if failures:
        lines.append(f"Validation: {len(failures)} failure(s)")
        for failure in failures[:5]:
            lines.append(f"  {failure['check']} at {failure['witness']}")
    else:
        lines.append("Validation: ok")
    result = report.get("result", {})
    if "betti" in result:
        lines.append(f"Betti: {result['betti']}")
    if "homology_betti" in result:
        lines.append(f"Homology Betti: {result['homology_betti']}")
    for key in ("truncated", "cohomology", "homology"):
        if key in result:
            residuals = [degree["residual"] for degree in result[key]["degrees"]]
            lines.append(f"Truncated {result[key]['direction']} residuals: {residuals}")
    checks = report.get("checks", [])
    if checks:
        passed = sum(1 for check in checks if check["status"] == "pass")
        lines.append(f"Checks: {passed}/{len(checks)} passed")
        for check in checks:
            if check["status"] == "fail":
                lines.append(f"  FAILED {check['name']}")
    lines.append(f"Exit code: {exit_code}")
    return lines
