"""Run detection strategies against a design model."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..metrics import Metric, MetricTable, compute_table, measured_entities
from ..model import DesignModel
from .filters import apply_filter, compose
from .language import Atom, StrategyAst

SMALL_SYSTEM_SIZE = 20


@dataclass(frozen=True)
class SuspectReport:
    strategy: str
    suspects: frozenset
    evidence: Mapping[str, Mapping[Metric, object]]
    warnings: tuple = field(default=())

    def sorted_suspects(self) -> list[str]:
        return sorted(self.suspects)


def evaluate_expr(expr, atom_result) -> set:
    """Fold a strategy expression given ``atom_result(atom) -> set``."""
    if isinstance(expr, Atom):
        return set(atom_result(expr))
    return compose(evaluate_expr(expr.left, atom_result), expr.op,
                   evaluate_expr(expr.right, atom_result))


def evaluate(model: DesignModel, strategy: StrategyAst, tables=None) -> SuspectReport:
    """Filter each atom's metric table and compose the results.

    ``tables`` may carry precomputed MetricTables keyed by Metric; missing
    ones are computed and added to it.
    """
    tables = {} if tables is None else tables

    def table(metric) -> MetricTable:
        if metric not in tables:
            tables[metric] = compute_table(model, metric)
        return tables[metric]

    suspects = evaluate_expr(strategy.expr, lambda a: apply_filter(table(a.metric), a.filter))
    metrics = strategy.metrics()
    evidence = {
        e: {m: table(m).values[e] for m in metrics}
        for e in sorted(suspects)
    }
    return SuspectReport(strategy.name, frozenset(suspects), evidence)


def lint_strategy(strategy: StrategyAst, model_size: int,
                  small_system: int = SMALL_SYSTEM_SIZE) -> list[str]:
    """Warn about percentage-based relative filters on small systems."""
    if model_size >= small_system:
        return []
    warnings = []
    for atom in strategy.atoms():
        if atom.filter.name in ("TopValues", "BottomValues") and atom.filter.is_percentage:
            warnings.append(
                f"{strategy.name}: {atom} is percentage-based but the system has only "
                f"{model_size} {strategy.target_kind} entities (< {small_system}); "
                f"consider an absolute count"
            )
    return warnings


def model_size(model: DesignModel, kind: str) -> int:
    return len(measured_entities(model, kind))
