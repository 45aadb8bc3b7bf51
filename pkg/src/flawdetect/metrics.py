"""Object-oriented design metrics over a DesignModel.

Method metrics: CC, MLOC. Class metrics: NOPA, WMC, DIT, NOC, CBO, RFC,
LCOM, TCC, ATFD. Only non-external entities are measured.

Notes on the pinned definitions:

* CBO counts efferent coupling only (classes this class calls into or whose
  attributes it touches); inheritance by itself does not couple.
* RFC follows calls one level deep.
* LCOM is ``max(P - Q, 0)``; TCC is 1.0 for classes with fewer than two
  methods. Both only look at the class's own attributes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Union

from .errors import MetricError
from .model import (
    PUBLIC,
    DesignModel,
    ancestors,
    declared_methods,
    owner_of,
    subclasses_of,
)

Number = Union[int, Fraction]


class Metric(enum.Enum):
    CC = "CC"
    MLOC = "MLOC"
    NOPA = "NOPA"
    WMC = "WMC"
    DIT = "DIT"
    NOC = "NOC"
    CBO = "CBO"
    RFC = "RFC"
    LCOM = "LCOM"
    TCC = "TCC"
    ATFD = "ATFD"

    @property
    def entity_kind(self) -> str:
        return "method" if self in (Metric.CC, Metric.MLOC) else "class"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MetricTable:
    metric: Metric
    values: Mapping[str, Number]

    def __len__(self):
        return len(self.values)


def _method(model: DesignModel, m: str):
    try:
        return model.methods[m]
    except KeyError:
        raise MetricError(f"{m} is not a measured method") from None


def _class(model: DesignModel, c: str):
    entity = model.classes.get(c)
    if entity is None:
        raise MetricError(f"unknown class {c}")
    if entity.is_external:
        raise MetricError(f"{c} is external and has no metrics")
    return entity


def cc(model: DesignModel, m: str) -> int:
    return _method(model, m).cyclomatic


def mloc(model: DesignModel, m: str) -> int:
    return _method(model, m).statement_count


def nopa(model: DesignModel, c: str) -> int:
    attrs = _class(model, c).attributes
    return sum(model.attributes[a].visibility == PUBLIC for a in attrs)


def wmc(model: DesignModel, c: str) -> int:
    return sum(model.methods[m].cyclomatic for m in _class(model, c).methods)


def dit(model: DesignModel, c: str) -> int:
    _class(model, c)
    return len(ancestors(model, c))


def noc(model: DesignModel, c: str) -> int:
    _class(model, c)
    return len(subclasses_of(model, c))


def _targets(model, c):
    for m in _class(model, c).methods:
        method = model.methods[m]
        yield from method.calls
        yield from method.accesses


def cbo(model: DesignModel, c: str) -> int:
    coupled = {owner_of(model, t) for t in _targets(model, c)}
    coupled.discard(c)
    return len(coupled)


def rfc(model: DesignModel, c: str) -> int:
    _class(model, c)
    own = declared_methods(model, c)
    response = set(own)
    for m in own:
        response |= model.methods[m].calls
    return len(response)


def _own_access_sets(model, c):
    entity = _class(model, c)
    own_attrs = set(entity.attributes)
    return [model.methods[m].accesses & own_attrs for m in entity.methods]


def lcom(model: DesignModel, c: str) -> int:
    disjoint = sharing = 0
    for a, b in combinations(_own_access_sets(model, c), 2):
        if a & b:
            sharing += 1
        else:
            disjoint += 1
    return max(disjoint - sharing, 0)


def tcc(model: DesignModel, c: str) -> Fraction:
    sets = _own_access_sets(model, c)
    n = len(sets)
    if n < 2:
        return Fraction(1)
    connected = sum(1 for a, b in combinations(sets, 2) if a & b)
    return Fraction(connected, n * (n - 1) // 2)


def atfd(model: DesignModel, c: str) -> int:
    entity = _class(model, c)
    excluded = {c, *ancestors(model, c)}
    foreign = set()
    for m in entity.methods:
        method = model.methods[m]
        for a in method.accesses:
            foreign.add(owner_of(model, a))
        for callee in method.calls:
            target = model.methods.get(callee)
            if target is not None and target.accessor_of is not None:
                foreign.add(target.owner)
    return len(foreign - excluded)


METRIC_FUNCTIONS = {
    Metric.CC: cc,
    Metric.MLOC: mloc,
    Metric.NOPA: nopa,
    Metric.WMC: wmc,
    Metric.DIT: dit,
    Metric.NOC: noc,
    Metric.CBO: cbo,
    Metric.RFC: rfc,
    Metric.LCOM: lcom,
    Metric.TCC: tcc,
    Metric.ATFD: atfd,
}


def measured_entities(model: DesignModel, kind: str) -> list[str]:
    if kind == "method":
        return sorted(model.methods)
    return model.internal_classes()


def compute_table(model: DesignModel, metric: Metric | str) -> MetricTable:
    metric = Metric(metric) if isinstance(metric, str) else metric
    fn = METRIC_FUNCTIONS[metric]
    return MetricTable(
        metric,
        {e: fn(model, e) for e in measured_entities(model, metric.entity_kind)},
    )


def compute_all(model: DesignModel) -> dict[Metric, MetricTable]:
    return {m: compute_table(model, m) for m in Metric}
