"""Command-line entry point.

Subcommands: run a configured benchmark, re-render a report from a CSV,
list registered formats, and clean benchmark directories.

Exit codes: 0 success, 1 validation error, 2 runtime failure,
3 benchmark completed but at least one read failed verification.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
from pathlib import Path

from .adapters import default_registry
from .config import (
    DEFAULT_OUTPUT_DIR,
    ConfigError,
    SINK_DISCARD,
    SINK_STDOUT,
    WorkloadConfig,
    parse_config,
    validate,
)
from .engine import RunError, remove_benchmark_dirs, run_trials
from .report import render_chart
from .results import OPERATIONS, ResultsError, SummaryTable, aggregate, from_csv, to_csv

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_UNVERIFIED = 3

_OUTPUT_DIR_ENV = "FORMATBENCH_OUTPUT_DIR"


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _default_output_dir() -> str:
    return os.environ.get(_OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR)


def _artifact_stem(test_name: str) -> str:
    return test_name.replace("/", "_").replace("\\", "_")


def _apply_overrides(config: WorkloadConfig, args: argparse.Namespace) -> WorkloadConfig:
    overrides = {}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.keep_files:
        overrides["keep_files"] = True
    if args.sink is not None:
        overrides["read_sink"] = SINK_STDOUT if args.sink == "stdout" else SINK_DISCARD
    if not overrides:
        return config
    return dataclasses.replace(config, **overrides)


def _print_summary(summary: SummaryTable, trial_count: int) -> None:
    print(f"{summary.test_name}: mean seconds per dataset over {trial_count} trial(s)")
    name_width = max(len("format"), max(len(f) for f in summary.formats()))
    header = "  ".join([f"{'format':<{name_width}}"] + [f"{op:>13}" for op in OPERATIONS])
    print(header)
    for fmt in summary.formats():
        cells = [f"{summary.value(fmt, op):>13.9f}" for op in OPERATIONS]
        print("  ".join([f"{fmt:<{name_width}}"] + cells))
    if summary.unverified_count:
        print(f"WARNING: {summary.unverified_count} record(s) failed verification")


def _cmd_run(args: argparse.Namespace) -> int:
    config_path = Path(args.config)
    try:
        document = config_path.read_text(encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot read config {config_path}: {exc}")
        return EXIT_VALIDATION
    try:
        config = parse_config(document, default_output_dir=_default_output_dir())
    except ConfigError as exc:
        _fail(str(exc))
        return EXIT_VALIDATION

    config = _apply_overrides(config, args)
    registry = default_registry()
    problems = validate(config, registry_names=registry.names())
    if problems:
        for problem in problems:
            _fail(problem)
        return EXIT_VALIDATION

    try:
        records = run_trials(config, registry)
    except (RunError, OSError) as exc:
        _fail(str(exc))
        return EXIT_RUNTIME

    out_dir = Path(config.output_dir)
    stem = _artifact_stem(config.test_name)
    csv_path = out_dir / f"{stem}.csv"
    svg_path = out_dir / f"{stem}.svg"
    summary = aggregate(records)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path.write_text(to_csv(records), encoding="utf-8")
        svg_path.write_text(render_chart(summary, summary.test_name), encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write results: {exc}")
        return EXIT_RUNTIME

    log.info("wrote %s", csv_path)
    log.info("wrote %s", svg_path)
    _print_summary(summary, config.trials)
    if any(not record.verified for record in records):
        _fail("verification failed for at least one trial")
        return EXIT_UNVERIFIED
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    csv_path = Path(args.csv)
    try:
        text = csv_path.read_text(encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot read csv {csv_path}: {exc}")
        return EXIT_VALIDATION
    try:
        summary = aggregate(from_csv(text))
        svg = render_chart(summary, summary.test_name)
    except (ResultsError, ValueError) as exc:
        _fail(str(exc))
        return EXIT_VALIDATION
    try:
        Path(args.out).write_text(svg, encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write {args.out}: {exc}")
        return EXIT_RUNTIME
    return EXIT_OK


def _cmd_formats(args: argparse.Namespace) -> int:
    del args
    for info in default_registry().list():
        if info.available:
            print(f"{info.name} available ({info.file_extension})")
        else:
            print(
                f"{info.name} unavailable ({info.file_extension}):"
                f" {info.unavailable_reason}"
            )
    return EXIT_OK


def _cmd_clean(args: argparse.Namespace) -> int:
    try:
        remove_benchmark_dirs(Path(args.output_dir))
    except OSError as exc:
        _fail(str(exc))
        return EXIT_RUNTIME
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formatbench",
        description="Benchmark array storage formats on create/write/open/read.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a benchmark from a YAML config")
    run.add_argument("--config", required=True, help="path to a workload YAML file")
    run.add_argument(
        "--sink",
        choices=("discard", "stdout"),
        default=None,
        help="where read payloads go (overrides config)",
    )
    run.add_argument(
        "--keep-files",
        action="store_true",
        help="keep benchmark directories after the run",
    )
    run.add_argument("--seed", type=int, default=None, help="override the config seed")
    run.add_argument(
        "--trials", type=int, default=None, help="override the config trial count"
    )
    run.set_defaults(handler=_cmd_run)

    report = sub.add_parser("report", help="re-render the chart from a results CSV")
    report.add_argument("--csv", required=True, help="results CSV from a prior run")
    report.add_argument("--out", required=True, help="path for the rendered SVG")
    report.set_defaults(handler=_cmd_report)

    formats = sub.add_parser("formats", help="list registered formats and availability")
    formats.set_defaults(handler=_cmd_formats)

    clean = sub.add_parser("clean", help="remove benchmark directories")
    clean.add_argument(
        "--output-dir",
        default=_default_output_dir(),
        help="directory holding the benchmark directories",
    )
    clean.set_defaults(handler=_cmd_clean)
    return parser


def main(argv=None) -> int:
    if not logging.getLogger().handlers:
        logging.basicConfig(
            stream=sys.stderr,
            level=logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )
    args = _build_parser().parse_args(argv)
    return args.handler(args)
