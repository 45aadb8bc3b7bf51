"""Threshold calibration by exhaustive grid search over a labelled corpus.

A template strategy carries ``$name`` holes in filter arguments. Every
combination of grid values is substituted, evaluated on every sample, and
scored by entity-level F1 micro-averaged over the corpus.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import CorpusError, TuneError
from .frontend import load_facts, load_sources
from .model import DesignModel
from .strategy import Atom, Compose, FilterSpec, Hole, Number, StrategyAst, evaluate

DEFAULT_GRID_CAP = 10_000


@dataclass(frozen=True)
class Sample:
    model: DesignModel
    flagged: frozenset
    source: str = ""


@dataclass(frozen=True)
class LabeledCorpus:
    samples: tuple

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        for i, s in enumerate(self.samples):
            missing = sorted(set(s.flagged) - s.model.entity_ids())
            if missing:
                raise CorpusError(f"sample {i} ({s.source or 'inline'}): flagged ids not in model: {missing}")


@dataclass(frozen=True)
class TunableStrategy:
    template: StrategyAst
    grid: Mapping[str, Sequence[Number]]

    def __post_init__(self):
        holes = set(self.template.holes())
        missing = holes - set(self.grid)
        if missing:
            raise TuneError(f"holes without grid values: {sorted(missing)}")
        unused = set(self.grid) - holes
        if unused:
            raise TuneError(f"grid names holes absent from the template: {sorted(unused)}")
        for name, values in self.grid.items():
            if not values:
                raise TuneError(f"empty grid for {name}")


@dataclass
class TuneResult:
    best: dict
    score: float
    table: list = field(default_factory=list)  # [(assignment, score)] in search order


def parse_grid_value(text) -> Number:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return Number(Fraction(str(text)))
    if not isinstance(text, str):
        raise TuneError(f"grid value {text!r} is not a number")
    s = text.strip()
    percent = s.endswith("%")
    try:
        value = Fraction(s[:-1] if percent else s)
    except (ValueError, ZeroDivisionError):
        raise TuneError(f"grid value {text!r} is not a number") from None
    return Number(value, percent)


def substitute(strategy: StrategyAst, assignment: Mapping[str, Number]) -> StrategyAst:
    def fill(expr):
        if isinstance(expr, Atom):
            args = tuple(assignment[a.name] if isinstance(a, Hole) else a for a in expr.filter.args)
            return Atom(expr.metric, FilterSpec(expr.filter.name, args))
        return Compose(expr.op, fill(expr.left), fill(expr.right))

    return replace(strategy, expr=fill(strategy.expr))


def f1_counts(suspects, flagged) -> tuple[int, int, int]:
    suspects, flagged = set(suspects), set(flagged)
    return len(suspects & flagged), len(suspects - flagged), len(flagged - suspects)


def f1_score(tp: int, fp: int, fn: int) -> float:
    if tp == fp == fn == 0:
        return 1.0
    return 2 * tp / (2 * tp + fp + fn)


def score(corpus: LabeledCorpus, strategy: StrategyAst, tables=None) -> float:
    """Micro-averaged F1 of ``strategy`` over all samples."""
    tp = fp = fn = 0
    for i, sample in enumerate(corpus.samples):
        cache = tables[i] if tables is not None else None
        report = evaluate(sample.model, strategy, cache)
        a, b, c = f1_counts(report.suspects, sample.flagged)
        tp, fp, fn = tp + a, fp + b, fn + c
    return f1_score(tp, fp, fn)


def assignments(grid: Mapping[str, Sequence[Number]]):
    names = sorted(grid)
    for combo in itertools.product(*(grid[n] for n in names)):
        yield dict(zip(names, combo))


def tune(corpus: LabeledCorpus, tunable: TunableStrategy, cap: int = DEFAULT_GRID_CAP) -> TuneResult:
    if not corpus.samples:
        raise TuneError("empty corpus")
    size = 1
    for values in tunable.grid.values():
        size *= len(values)
    if size > cap:
        raise TuneError(f"grid has {size} assignments, over the cap of {cap}")
    # metric tables do not depend on thresholds; share them across assignments
    tables = [{} for _ in corpus.samples]
    result = TuneResult(best={}, score=-1.0)
    for assignment in assignments(tunable.grid):
        s = score(corpus, substitute(tunable.template, assignment), tables)
        result.table.append((assignment, s))
        if s > result.score:
            result.best, result.score = assignment, s
    return result


def format_assignment(assignment: Mapping[str, Number]) -> str:
    return ", ".join(f"{k}={v}" for k, v in assignment.items())


# -- file formats ------------------------------------------------------------

def _read_json(path, what):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise TuneError(f"{path}: cannot read {what} ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise TuneError(f"{path}: invalid JSON ({exc})") from None


def load_corpus(path) -> LabeledCorpus:
    """Read ``{"samples": [{"facts" | "sources", "flagged"}]}``; paths are relative to the file."""
    path = Path(path)
    data = _read_json(path, "corpus")
    if not isinstance(data, dict) or not isinstance(data.get("samples"), list):
        raise CorpusError(f"{path}: expected an object with a 'samples' list")
    base = path.parent
    samples = []
    for i, entry in enumerate(data["samples"]):
        where = f"{path}: samples[{i}]"
        if not isinstance(entry, dict):
            raise CorpusError(f"{where}: expected an object")
        flagged = entry.get("flagged")
        if not isinstance(flagged, list) or not all(isinstance(x, str) for x in flagged):
            raise CorpusError(f"{where}.flagged: expected a list of entity ids")
        if ("facts" in entry) == ("sources" in entry):
            raise CorpusError(f"{where}: give exactly one of 'facts' or 'sources'")
        try:
            if "facts" in entry:
                model = load_facts(base / entry["facts"])
                source = entry["facts"]
            else:
                sources = entry["sources"]
                if not isinstance(sources, list) or not sources:
                    raise CorpusError(f"{where}.sources: expected a non-empty list of paths")
                model = load_sources([base / s for s in sources])
                source = ",".join(sources)
        except OSError as exc:
            raise CorpusError(f"{where}: {exc}") from None
        samples.append(Sample(model, frozenset(flagged), source))
    return LabeledCorpus(samples)


def load_grid(path) -> dict[str, list[Number]]:
    data = _read_json(path, "grid")
    holes = data.get("holes") if isinstance(data, dict) else None
    if not isinstance(holes, dict):
        raise TuneError(f"{path}: expected an object with a 'holes' mapping")
    grid = {}
    for name, values in holes.items():
        if not isinstance(values, list):
            raise TuneError(f"{path}: holes.{name}: expected a list")
        key = name if name.startswith("$") else f"${name}"
        grid[key] = [parse_grid_value(v) for v in values]
    return grid


__all__ = [
    "DEFAULT_GRID_CAP", "LabeledCorpus", "Sample", "TunableStrategy", "TuneResult",
    "assignments", "f1_counts", "f1_score", "format_assignment", "load_corpus",
    "load_grid", "parse_grid_value", "score", "substitute", "tune",
]
