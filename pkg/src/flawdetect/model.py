"""Design meta-model: classes, methods and attributes plus the relations
between them (inheritance, calls, attribute accesses).

Entity identifiers are plain strings of the form ``kind:QualifiedName``::

    class:A        method:A.m1        attr:A.x

Members of external classes are never materialized. A call or access that
lands on an external class is recorded as an *opaque* id (``method:Q.run``)
whose owner is recovered from the qualified name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import ModelError

CLASS = "class"
METHOD = "method"
ATTR = "attr"

PUBLIC = "public"
PRIVATE = "private"
VISIBILITIES = (PUBLIC, PRIVATE)


def class_id(name: str) -> str:
    return f"{CLASS}:{name}"


def method_id(owner_name: str, name: str) -> str:
    return f"{METHOD}:{owner_name}.{name}"


def attr_id(owner_name: str, name: str) -> str:
    return f"{ATTR}:{owner_name}.{name}"


def split_id(entity_id: str) -> tuple[str, str]:
    """Return ``(kind, qualified_name)``."""
    kind, sep, qualname = entity_id.partition(":")
    if not sep or not qualname:
        raise ModelError(f"malformed entity id {entity_id!r}")
    return kind, qualname


def qualifier_class(entity_id: str) -> str:
    """Class id named by a member id's qualifier (``method:A.m`` -> ``class:A``)."""
    kind, qualname = split_id(entity_id)
    if kind == CLASS:
        raise ModelError(f"{entity_id} is not a member id")
    owner, sep, _ = qualname.rpartition(".")
    if not sep:
        raise ModelError(f"malformed member id {entity_id!r}")
    return class_id(owner)


@dataclass(frozen=True)
class ClassEntity:
    id: str
    name: str
    superclass: Optional[str] = None
    is_external: bool = False
    attributes: tuple[str, ...] = ()
    methods: tuple[str, ...] = ()

    def __post_init__(self):
        # members kept sorted so models compare equal regardless of build order
        object.__setattr__(self, "attributes", tuple(sorted(self.attributes)))
        object.__setattr__(self, "methods", tuple(sorted(self.methods)))


@dataclass(frozen=True)
class MethodEntity:
    id: str
    name: str
    owner: str
    visibility: str = PUBLIC
    cyclomatic: int = 1
    statement_count: int = 0
    calls: frozenset[str] = frozenset()
    accesses: frozenset[str] = frozenset()
    accessor_of: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "calls", frozenset(self.calls))
        object.__setattr__(self, "accesses", frozenset(self.accesses))


@dataclass(frozen=True)
class AttributeEntity:
    id: str
    name: str
    owner: str
    visibility: str = PRIVATE


@dataclass(frozen=True)
class Diagnostic:
    entity: str
    message: str

    def __str__(self):
        return f"{self.entity}: {self.message}"


@dataclass(frozen=True, eq=True)
class DesignModel:
    classes: Mapping[str, ClassEntity] = field(default_factory=dict)
    methods: Mapping[str, MethodEntity] = field(default_factory=dict)
    attributes: Mapping[str, AttributeEntity] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("classes", "methods", "attributes"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    __hash__ = None  # mappings are not hashable

    @classmethod
    def from_entities(cls, entities) -> "DesignModel":
        classes, methods, attributes = {}, {}, {}
        for e in entities:
            target = {ClassEntity: classes, MethodEntity: methods, AttributeEntity: attributes}[type(e)]
            if e.id in target:
                raise ModelError(f"duplicate entity {e.id}")
            target[e.id] = e
        return cls(classes, methods, attributes)

    def internal_classes(self) -> list[str]:
        return sorted(c for c, e in self.classes.items() if not e.is_external)

    def entity_ids(self) -> set[str]:
        return set(self.classes) | set(self.methods) | set(self.attributes)


def _class(model: DesignModel, c: str) -> ClassEntity:
    try:
        return model.classes[c]
    except KeyError:
        raise ModelError(f"unknown class {c!r}") from None


def ancestors(model: DesignModel, c: str) -> list[str]:
    """Superclass chain of ``c`` from immediate parent to root."""
    chain = []
    seen = {c}
    current = _class(model, c).superclass
    while current is not None:
        if current in seen:
            raise ModelError(f"inheritance cycle through {current}")
        seen.add(current)
        chain.append(current)
        current = _class(model, current).superclass
    return chain


def subclasses_of(model: DesignModel, c: str) -> set[str]:
    _class(model, c)
    return {k for k, e in model.classes.items() if e.superclass == c}


def declared_methods(model: DesignModel, c: str) -> set[str]:
    return set(_class(model, c).methods)


def declared_attributes(model: DesignModel, c: str) -> set[str]:
    return set(_class(model, c).attributes)


def owner_of(model: DesignModel, member: str) -> str:
    """Owning class of a method or attribute id, opaque external members included."""
    if member in model.methods:
        return model.methods[member].owner
    if member in model.attributes:
        return model.attributes[member].owner
    owner = qualifier_class(member)
    if owner in model.classes and model.classes[owner].is_external:
        return owner
    raise ModelError(f"unknown member {member!r}")


def _resolves(model: DesignModel, ref: str, kind: str) -> bool:
    table = model.methods if kind == METHOD else model.attributes
    if ref in table:
        return True
    try:
        ref_kind, _ = split_id(ref)
        owner = qualifier_class(ref)
    except ModelError:
        return False
    return ref_kind == kind and owner in model.classes and model.classes[owner].is_external


def validate(model: DesignModel) -> list[Diagnostic]:
    """Check every structural invariant; one diagnostic per violation."""
    diags: list[Diagnostic] = []

    def report(entity, message):
        diags.append(Diagnostic(entity, message))

    for cid, c in model.classes.items():
        if cid != c.id:
            report(cid, f"keyed under {cid} but has id {c.id}")
        if cid != class_id(c.name):
            report(cid, f"id does not match name {c.name!r}")
        if c.superclass is not None and c.superclass not in model.classes:
            report(cid, f"dangling superclass {c.superclass}")
        if c.is_external and (c.attributes or c.methods):
            report(cid, "external class declares members")
        for a in c.attributes:
            if a not in model.attributes:
                report(cid, f"dangling attribute {a}")
            elif model.attributes[a].owner != cid:
                report(cid, f"lists attribute {a} owned by {model.attributes[a].owner}")
        for m in c.methods:
            if m not in model.methods:
                report(cid, f"dangling method {m}")
            elif model.methods[m].owner != cid:
                report(cid, f"lists method {m} owned by {model.methods[m].owner}")

    reported_cycles = set()
    for cid in sorted(model.classes):
        path = []
        current = cid
        while current is not None and current in model.classes and current not in path:
            path.append(current)
            current = model.classes[current].superclass
        if current is not None and current in path:
            cycle = frozenset(path[path.index(current):])
            if cycle not in reported_cycles:
                reported_cycles.add(cycle)
                report(min(cycle), "inheritance cycle " + " -> ".join(sorted(cycle)))

    for kind, table in ((METHOD, model.methods), (ATTR, model.attributes)):
        for eid, e in table.items():
            if eid != e.id:
                report(eid, f"keyed under {eid} but has id {e.id}")
            try:
                id_kind, _ = split_id(eid)
                named_owner = qualifier_class(eid)
            except ModelError as exc:
                report(eid, str(exc))
                continue
            if id_kind != kind:
                report(eid, f"id kind {id_kind!r} is not {kind!r}")
            if e.owner not in model.classes or named_owner not in model.classes:
                report(eid, f"dangling owner {e.owner}")
                continue
            if named_owner != e.owner:
                report(eid, f"id names {named_owner} but owner is {e.owner}")
            owner = model.classes[e.owner]
            if owner.is_external:
                report(eid, f"owner {e.owner} is external")
            listed = owner.methods if kind == METHOD else owner.attributes
            if eid not in listed:
                report(eid, f"not listed by owner {e.owner}")
            if e.visibility not in VISIBILITIES:
                report(eid, f"bad visibility {e.visibility!r}")

    for mid, m in model.methods.items():
        if not isinstance(m.cyclomatic, int) or m.cyclomatic < 1:
            report(mid, f"cyclomatic must be >= 1, got {m.cyclomatic!r}")
        if not isinstance(m.statement_count, int) or m.statement_count < 0:
            report(mid, f"statement_count must be >= 0, got {m.statement_count!r}")
        for callee in sorted(m.calls):
            if not _resolves(model, callee, METHOD):
                report(mid, f"dangling call target {callee}")
        for target in sorted(m.accesses):
            if not _resolves(model, target, ATTR):
                report(mid, f"dangling access target {target}")
        if m.accessor_of is not None:
            a = model.attributes.get(m.accessor_of)
            if a is None or a.owner != m.owner:
                report(mid, f"accessor_of {m.accessor_of} is not an attribute of {m.owner}")
    return diags


def check(model: DesignModel) -> DesignModel:
    """Raise ModelError carrying all diagnostics unless ``model`` validates."""
    diags = validate(model)
    if diags:
        detail = "; ".join(str(d) for d in diags[:5])
        more = f" (+{len(diags) - 5} more)" if len(diags) > 5 else ""
        raise ModelError(f"invalid design model: {detail}{more}", diags)
    return model
