"""Neutral JSON facts format for design models.

    {"version": 1,
     "classes": [{"id", "name", "superclass", "is_external",
                  "attributes": [{"id", "name", "visibility"}],
                  "methods": [{"id", "name", "visibility", "cyclomatic",
                               "statement_count", "accessor_of",
                               "calls": [...], "accesses": [...]}]}]}

Members are nested under their owning class. Saving sorts every array by id
so the output is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import FactsError
from ..model import (
    VISIBILITIES,
    AttributeEntity,
    ClassEntity,
    DesignModel,
    MethodEntity,
    check,
)

FACTS_VERSION = 1


def to_facts(model: DesignModel) -> dict:
    classes = []
    for cid in sorted(model.classes):
        c = model.classes[cid]
        classes.append({
            "id": c.id,
            "name": c.name,
            "superclass": c.superclass,
            "is_external": c.is_external,
            "attributes": [
                {"id": a.id, "name": a.name, "visibility": a.visibility}
                for a in (model.attributes[x] for x in sorted(c.attributes))
            ],
            "methods": [
                {
                    "id": m.id,
                    "name": m.name,
                    "visibility": m.visibility,
                    "cyclomatic": m.cyclomatic,
                    "statement_count": m.statement_count,
                    "accessor_of": m.accessor_of,
                    "calls": sorted(m.calls),
                    "accesses": sorted(m.accesses),
                }
                for m in (model.methods[x] for x in sorted(c.methods))
            ],
        })
    return {"version": FACTS_VERSION, "classes": classes}


def dumps_facts(model: DesignModel) -> str:
    return json.dumps(to_facts(model), indent=2) + "\n"


def save_facts(model: DesignModel, path) -> None:
    Path(path).write_text(dumps_facts(model), encoding="utf-8")


def _get(obj, key, types, where, nullable=False):
    if not isinstance(obj, dict):
        raise FactsError(f"{where}: expected an object")
    if key not in obj:
        raise FactsError(f"{where}.{key}: missing field")
    value = obj[key]
    if value is None and nullable:
        return None
    # bool is an int subclass; keep the two apart
    if isinstance(value, bool) and bool not in types:
        raise FactsError(f"{where}.{key}: expected {_names(types)}, got {value!r}")
    if not isinstance(value, types):
        raise FactsError(f"{where}.{key}: expected {_names(types)}, got {value!r}")
    return value


def _names(types):
    return " or ".join(t.__name__ for t in types)


def _str_list(obj, key, where):
    values = _get(obj, key, (list,), where)
    for i, v in enumerate(values):
        if not isinstance(v, str):
            raise FactsError(f"{where}.{key}[{i}]: expected str, got {v!r}")
    return values


def _visibility(obj, where):
    v = _get(obj, "visibility", (str,), where)
    if v not in VISIBILITIES:
        raise FactsError(f"{where}.visibility: expected one of {VISIBILITIES}, got {v!r}")
    return v


def from_facts(data) -> DesignModel:
    """Build a model from parsed facts JSON; FactsError on schema violations,
    ModelError on dangling references."""
    if not isinstance(data, dict):
        raise FactsError("facts: expected a JSON object")
    version = _get(data, "version", (int,), "facts")
    if version != FACTS_VERSION:
        raise FactsError(f"facts.version: unsupported version {version!r}")
    entities = []
    seen = set()
    for i, c in enumerate(_get(data, "classes", (list,), "facts")):
        where = f"classes[{i}]"
        cid = _get(c, "id", (str,), where)
        attrs, methods = [], []
        for j, a in enumerate(_get(c, "attributes", (list,), where)):
            awhere = f"{where}.attributes[{j}]"
            attrs.append(AttributeEntity(
                _get(a, "id", (str,), awhere), _get(a, "name", (str,), awhere), cid,
                _visibility(a, awhere),
            ))
        for j, m in enumerate(_get(c, "methods", (list,), where)):
            mwhere = f"{where}.methods[{j}]"
            cyclomatic = _get(m, "cyclomatic", (int,), mwhere)
            if cyclomatic < 1:
                raise FactsError(f"{mwhere}.cyclomatic: must be >= 1, got {cyclomatic}")
            statements = _get(m, "statement_count", (int,), mwhere)
            if statements < 0:
                raise FactsError(f"{mwhere}.statement_count: must be >= 0, got {statements}")
            methods.append(MethodEntity(
                _get(m, "id", (str,), mwhere), _get(m, "name", (str,), mwhere), cid,
                visibility=_visibility(m, mwhere),
                cyclomatic=cyclomatic,
                statement_count=statements,
                calls=_str_list(m, "calls", mwhere),
                accesses=_str_list(m, "accesses", mwhere),
                accessor_of=_get(m, "accessor_of", (str,), mwhere, nullable=True),
            ))
        entities.append(ClassEntity(
            cid, _get(c, "name", (str,), where),
            superclass=_get(c, "superclass", (str,), where, nullable=True),
            is_external=_get(c, "is_external", (bool,), where),
            attributes=[a.id for a in attrs],
            methods=[m.id for m in methods],
        ))
        entities.extend(attrs)
        entities.extend(methods)
    for e in entities:
        if e.id in seen:
            raise FactsError(f"facts: duplicate id {e.id}")
        seen.add(e.id)
    return check(DesignModel.from_entities(entities))


def loads_facts(text: str) -> DesignModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FactsError(f"facts: invalid JSON ({exc})") from None
    return from_facts(data)


def load_facts(path) -> DesignModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise FactsError(f"{path}: not UTF-8 ({exc})") from None
    try:
        return loads_facts(text)
    except FactsError as exc:
        raise FactsError(f"{path}: {exc}") from None
