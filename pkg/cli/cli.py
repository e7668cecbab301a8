"""
Command-line front end: reads a JSON problem config, runs one command and
writes the JSON report.

Exit codes: 0 success, 1 validation or check failure, 2 config error
(including a config that cannot be read or a report that cannot be written).
"""
# Standard library imports
import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to path to allow importing the packages
sys.path.append(str(Path(__file__).resolve().parent.parent))

# pylint: disable=wrong-import-position
# Local application imports
from reports.report_files import ReportFiles, summarize
from runner.config import COMMANDS, ConfigError, build_problem, parse_config, resolve_seed
from runner.runner import ProblemRunner

CONFIG_ERROR_EXIT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffop",
        description="Hochschild (co)homology of differential operator rings A#_f U(g).")
    parser.add_argument("--config", required=True, help="path to the JSON problem config")
    parser.add_argument("--command", choices=COMMANDS,
                        help="command to run (defaults to the config's 'command')")
    parser.add_argument("--out", help="path of the JSON report to write")
    parser.add_argument("--seed", type=int, help="seed for random samples")
    parser.add_argument("--nmax", type=int, help="highest degree to compute")
    parser.add_argument("--cap", type=int, action="append", dest="caps",
                        help="filtration cap for truncated runs; repeatable")
    parser.add_argument("--field", help="rationals or fp:<p>")
    return parser


def _configure_logging():
    level_name = os.getenv("DIFFOP_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _print_config_errors(error: ConfigError):
    print("Config error:")
    for location, message in error.errors:
        print(f"  {location}: {message}")


def main(argv: Optional[List[str]] = None) -> int:
    """Runs the CLI and returns the exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging()
    files = ReportFiles()
    try:
        text = files.read_config(args.config)
    except (ValueError, OSError) as exc:
        print(f"❌ Error: could not read the config: {exc}")
        return CONFIG_ERROR_EXIT
    try:
        config = parse_config(text)
        command = args.command or config.command
        if command is None:
            raise ConfigError([("command", "no command given on the command line or in the config")])
        if args.nmax is not None and args.nmax < 0:
            raise ConfigError([("--nmax", "must be at least 0")])
        if args.caps and min(args.caps) < 0:
            raise ConfigError([("--cap", "caps must be at least 0")])
        problem = build_problem(config, args.field)
        runner = ProblemRunner(problem, resolve_seed(config, args.seed), args.nmax, args.caps)
        outcome = runner.run(command)
    except ConfigError as exc:
        _print_config_errors(exc)
        return CONFIG_ERROR_EXIT

    for line in summarize(outcome.report, outcome.exit_code):
        print(line)
    if args.out:
        try:
            print(files.write_report(args.out, outcome.report))
        except (ValueError, OSError) as exc:
            print(f"❌ Error: could not write the report: {exc}")
            return CONFIG_ERROR_EXIT
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
