"""Command-line driver.

    flawdetect analyze --src a.moo b.moo --builtin all --format json
    flawdetect analyze --facts model.json --strategy mine.sod --fail-on-suspects
    flawdetect tune --corpus corpus.json --template god.sod --grid grid.json

Exit codes: 0 ok, 1 suspects found with --fail-on-suspects,
2 usage or input error, 3 invalid design model.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import catalog
from .errors import FlawDetectError, ModelError
from .frontend import load_facts, load_sources, save_facts
from .metrics import Metric, compute_all
from .model import check
from .strategy import evaluate, lint_strategy, load_file, model_size
from .strategy.filters import format_number
from .tuning import TunableStrategy, format_assignment, load_corpus, load_grid, tune

EXIT_OK = 0
EXIT_SUSPECTS = 1
EXIT_USAGE = 2
EXIT_MODEL = 3


@dataclass
class RunConfig:
    sources: list = field(default_factory=list)
    facts: Optional[str] = None
    strategy_files: list = field(default_factory=list)
    builtins: list = field(default_factory=list)
    output_format: str = "text"
    output: Optional[str] = None
    fail_on_suspects: bool = False
    dump_facts: Optional[str] = None
    metrics_only: bool = False

    def check(self):
        if bool(self.sources) == bool(self.facts):
            raise UsageError("give exactly one of --src or --facts")
        if not self.metrics_only and not (self.strategy_files or self.builtins):
            raise UsageError("no strategies selected (use --strategy, --builtin or --metrics-only)")
        if self.output_format not in ("text", "json"):
            raise UsageError(f"unknown format {self.output_format!r}")


class UsageError(FlawDetectError):
    pass


def json_value(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else float(v)
    return v


def text_value(v):
    if isinstance(v, Fraction):
        return format_number(v) if v.denominator == 1 else f"{float(v):.4g}"
    return str(v)


def report_to_json(report, warnings) -> dict:
    return {
        "strategy": report.strategy,
        "suspects": [
            {"id": e, "evidence": {str(m): json_value(v) for m, v in report.evidence[e].items()}}
            for e in report.sorted_suspects()
        ],
        "warnings": list(warnings),
    }


def render_text(reports) -> str:
    lines = []
    for report, _ in reports:
        lines.append(f"{report.strategy}: {len(report.suspects)} suspect(s)")
        for e in report.sorted_suspects():
            values = " ".join(f"{m}={text_value(v)}" for m, v in report.evidence[e].items())
            lines.append(f"  {e}  {values}")
    return "\n".join(lines) + "\n"


def render_metrics(model, fmt) -> str:
    tables = compute_all(model)
    if fmt == "json":
        data = {str(m): {e: json_value(v) for e, v in sorted(t.values.items())} for m, t in tables.items()}
        return json.dumps({"metrics": data}, indent=2) + "\n"
    lines = []
    for kind in ("class", "method"):
        metrics = [m for m in Metric if m.entity_kind == kind]
        entities = sorted(tables[metrics[0]].values)
        if not entities:
            continue
        lines.append("\t".join(["entity", *(str(m) for m in metrics)]))
        for e in entities:
            lines.append("\t".join([e, *(text_value(tables[m].values[e]) for m in metrics)]))
        lines.append("")
    return "\n".join(lines)


def load_model(config: RunConfig):
    if config.facts:
        return load_facts(config.facts)
    return load_sources(config.sources)


def run_analyze(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config.check()
        strategies = []
        for path in config.strategy_files:
            strategies.extend(load_file(path))
        if config.builtins:
            strategies.extend(catalog.select(config.builtins))
        model = check(load_model(config))
        if config.dump_facts:
            save_facts(model, config.dump_facts)
        if config.metrics_only:
            out = render_metrics(model, config.output_format)
            _write(out, config.output, stdout)
            return EXIT_OK
        tables = {}
        reports = []
        for s in strategies:
            warnings = lint_strategy(s, model_size(model, s.target_kind))
            for w in warnings:
                print(f"warning: {w}", file=stderr)
            reports.append((evaluate(model, s, tables), warnings))
    except ModelError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_MODEL
    except (FlawDetectError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE

    if config.output_format == "json":
        out = json.dumps([report_to_json(r, w) for r, w in reports], indent=2) + "\n"
    else:
        out = render_text(reports)
    _write(out, config.output, stdout)
    found = any(r.suspects for r, _ in reports)
    return EXIT_SUSPECTS if found and config.fail_on_suspects else EXIT_OK


def run_tune(corpus_path, template_path, grid_path, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        templates = load_file(template_path)
        if len(templates) != 1:
            raise UsageError(f"{template_path}: expected exactly one template strategy, found {len(templates)}")
        grid = load_grid(grid_path)
        corpus = load_corpus(corpus_path)
        result = tune(corpus, TunableStrategy(templates[0], grid))
    except (FlawDetectError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    for assignment, s in result.table:
        print(f"{format_assignment(assignment)}\tF1={s:.4f}", file=stdout)
    print(f"best: {format_assignment(result.best)}\tF1={result.score}", file=stdout)
    return EXIT_OK


def _write(text, path, stdout):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flawdetect", description="Metric-based design flaw detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="compute metrics and run detection strategies")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--src", nargs="+", metavar="PATH", help="MiniOO source files")
    src.add_argument("--facts", metavar="FILE", help="facts JSON file")
    a.add_argument("--strategy", action="append", default=[], metavar="FILE", help="SOD strategy file")
    a.add_argument("--builtin", action="append", default=[], metavar="NAME",
                   help="builtin strategy or flaw name, or 'all'")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--output", metavar="FILE")
    a.add_argument("--fail-on-suspects", action="store_true")
    a.add_argument("--dump-facts", metavar="FILE")
    a.add_argument("--metrics-only", action="store_true")

    t = sub.add_parser("tune", help="grid-search strategy thresholds on a labelled corpus")
    t.add_argument("--corpus", required=True)
    t.add_argument("--template", required=True)
    t.add_argument("--grid", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "tune":
        return run_tune(args.corpus, args.template, args.grid)
    config = RunConfig(
        sources=args.src or [],
        facts=args.facts,
        strategy_files=args.strategy,
        builtins=args.builtin,
        output_format=args.format,
        output=args.output,
        fail_on_suspects=args.fail_on_suspects,
        dump_facts=args.dump_facts,
        metrics_only=args.metrics_only,
    )
    return run_analyze(config)


if __name__ == "__main__":
    sys.exit(main())
