"""Registry of object-oriented design flaws and the strategies shipped for them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .errors import NoStrategyError, StrategyNameError
from .model import DesignModel
from .strategy import StrategyAst, evaluate, parse_file

PAPER_SPECIFIED = "paper-specified"
ARTIFACT_DEFINED = "artifact-defined"
REGISTRY_ONLY = "registry-only"

ALL_BUILTIN = "all-builtin"


@dataclass(frozen=True)
class FlawEntry:
    flaw_name: str
    level: str  # class | method | subsystem | micro-design
    builtin_strategy: Optional[StrategyAst] = None
    provenance: str = REGISTRY_ONLY

    @property
    def strategy_name(self) -> Optional[str]:
        return self.builtin_strategy.name if self.builtin_strategy else None


# (flaw name, level, builtin strategy name, provenance)
_TAXONOMY = [
    ("Shotgun Surgery", "class", None, REGISTRY_ONLY),
    ("Wide subsystem interface", "subsystem", None, REGISTRY_ONLY),
    ("Feature Envy", "method", None, REGISTRY_ONLY),
    ("Misplaced class", "subsystem", None, REGISTRY_ONLY),
    ("God class", "class", "GodClass", PAPER_SPECIFIED),
    ("God method", "method", "GodMethod", ARTIFACT_DEFINED),
    ("God package", "subsystem", None, REGISTRY_ONLY),
    ("Data class", "class", "DataClass", ARTIFACT_DEFINED),
    ("Refused Bequest", "class", None, REGISTRY_ONLY),
    ("Lack of Bridge", "micro-design", None, REGISTRY_ONLY),
    ("Lack of Strategy", "micro-design", None, REGISTRY_ONLY),
    ("Lack of State", "micro-design", None, REGISTRY_ONLY),
    ("Lack of Singleton", "micro-design", None, REGISTRY_ONLY),
    ("Lack of Facade", "micro-design", None, REGISTRY_ONLY),
]


def builtin_sod_text() -> str:
    return resources.files("flawdetect").joinpath("builtin.sod").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def builtin_strategies() -> dict[str, StrategyAst]:
    return {s.name: s for s in parse_file(builtin_sod_text(), "builtin.sod")}


@lru_cache(maxsize=None)
def _registry() -> tuple[FlawEntry, ...]:
    strategies = builtin_strategies()
    entries = []
    for name, level, strategy_name, provenance in _TAXONOMY:
        strategy = strategies[strategy_name] if strategy_name else None
        if strategy is not None:
            assert strategy.target_kind == level, (name, level)
        entries.append(FlawEntry(name, level, strategy, provenance))
    return tuple(entries)


def builtin_registry() -> list[FlawEntry]:
    return list(_registry())


def lookup(name: str) -> FlawEntry:
    """Find an entry by flaw name (case-insensitive) or builtin strategy name."""
    for entry in _registry():
        if name == entry.strategy_name or name.lower() == entry.flaw_name.lower():
            return entry
    raise StrategyNameError(f"unknown flaw or strategy {name!r}")


def select(selection) -> list[StrategyAst]:
    if isinstance(selection, str):
        selection = [selection]
    chosen = []
    for name in selection:
        if name in (ALL_BUILTIN, "all"):
            chosen.extend(e.builtin_strategy for e in _registry() if e.builtin_strategy)
            continue
        entry = lookup(name)
        if entry.builtin_strategy is None:
            raise NoStrategyError(f"{entry.flaw_name!r} has no detection strategy ({entry.provenance})")
        chosen.append(entry.builtin_strategy)
    return chosen


def detect_all(model: DesignModel, selection=ALL_BUILTIN):
    """One SuspectReport per selected strategy, in selection order."""
    tables = {}
    return [evaluate(model, s, tables) for s in select(selection)]
