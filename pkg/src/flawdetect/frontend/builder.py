"""Turn a parsed MiniOO program into a DesignModel.

Receivers are resolved through their declared static types. A member lookup
walks the superclass chain; if the chain reaches an external class the
member becomes an opaque id on that class. Expressions whose type cannot be
known (primitives, call results) simply stop resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import ModelError
from ..model import (
    AttributeEntity,
    ClassEntity,
    DesignModel,
    MethodEntity,
    attr_id,
    check,
    class_id,
    method_id,
)
from . import syntax as ast

# type names that never become classes
PRIMITIVE_TYPES = frozenset({"int", "bool", "boolean", "string", "float", "void"})


def _where(pos) -> str:
    path, line, column = pos
    return f"{path or '<input>'}:{line}:{column}"


@dataclass
class _ClassInfo:
    decl: Optional[ast.ClassDecl]  # None for external classes
    fields: dict = field(default_factory=dict)  # name -> AttrDecl
    methods: dict = field(default_factory=dict)  # name -> MethodDecl

    @property
    def external(self):
        return self.decl is None


class _Builder:
    def __init__(self, program: ast.Program):
        self.program = program
        self.classes: dict[str, _ClassInfo] = {}

    def declare(self):
        for decl in self.program.classes:
            if decl.name in self.classes:
                raise ModelError(f"{_where(decl.pos)}: duplicate class {decl.name}")
            if decl.name in PRIMITIVE_TYPES or decl.name == "this":
                raise ModelError(f"{_where(decl.pos)}: reserved class name {decl.name}")
            info = _ClassInfo(decl)
            for member in decl.attributes + decl.methods:
                if member.name in info.fields or member.name in info.methods:
                    raise ModelError(
                        f"{_where(member.pos)}: duplicate member {decl.name}.{member.name}"
                    )
                target = info.fields if isinstance(member, ast.AttrDecl) else info.methods
                target[member.name] = member
            self.classes[decl.name] = info

        for decl in self.program.classes:
            if decl.superclass is not None:
                if decl.superclass in PRIMITIVE_TYPES:
                    raise ModelError(f"{_where(decl.pos)}: cannot extend {decl.superclass}")
                self.type_ref(decl.superclass)
            for a in decl.attributes:
                self.type_ref(a.type_name)
            for m in decl.methods:
                for p in m.params:
                    self.type_ref(p.type_name)
                for s in ast.iter_statements(m.body):
                    if isinstance(s, ast.VarDecl):
                        self.type_ref(s.type_name)

    def type_ref(self, name: str) -> Optional[str]:
        """Register a referenced type name; returns the class name or None for primitives."""
        if name in PRIMITIVE_TYPES:
            return None
        if name not in self.classes:
            self.classes[name] = _ClassInfo(None)
        return name

    def skeleton(self) -> DesignModel:
        # classes only; used to reject inheritance cycles before member resolution
        return DesignModel(
            {class_id(n): ClassEntity(class_id(n), n,
                                      superclass=class_id(i.decl.superclass) if i.decl and i.decl.superclass else None,
                                      is_external=i.external)
             for n, i in self.classes.items()}
        )

    def chain(self, name: str):
        while name is not None:
            yield name
            info = self.classes[name]
            name = info.decl.superclass if info.decl else None

    def lookup_field(self, cls: str, name: str):
        """Return ``(attr_id, type_name)``; attr_id is None when unresolvable."""
        for c in self.chain(cls):
            info = self.classes[c]
            if info.external:
                return attr_id(c, name), None
            if name in info.fields:
                return attr_id(c, name), self.type_of_name(info.fields[name].type_name)
        return None, None

    def lookup_method(self, cls: str, name: str) -> Optional[str]:
        for c in self.chain(cls):
            info = self.classes[c]
            if info.external or name in info.methods:
                return method_id(c, name)
        return None

    def type_of_name(self, type_name: str) -> Optional[str]:
        return None if type_name in PRIMITIVE_TYPES else type_name

    def build(self) -> DesignModel:
        self.declare()
        check(self.skeleton())
        entities = []
        for name, info in self.classes.items():
            cid = class_id(name)
            if info.external:
                entities.append(ClassEntity(cid, name, is_external=True))
                continue
            decl = info.decl
            entities.append(ClassEntity(
                cid, name,
                superclass=class_id(decl.superclass) if decl.superclass else None,
                attributes=[attr_id(name, a.name) for a in decl.attributes],
                methods=[method_id(name, m.name) for m in decl.methods],
            ))
            for a in decl.attributes:
                entities.append(AttributeEntity(attr_id(name, a.name), a.name, cid, a.visibility))
            for m in decl.methods:
                entities.append(_MethodScanner(self, name, m).entity())
        return check(DesignModel.from_entities(entities))


class _MethodScanner:
    def __init__(self, builder: _Builder, cls: str, decl: ast.MethodDecl):
        self.b = builder
        self.cls = cls
        self.decl = decl
        self.locals: dict[str, Optional[str]] = {}
        self.calls: set[str] = set()
        self.accesses: set[str] = set()
        for p in decl.params:
            if p.name in self.locals:
                raise ModelError(f"{_where(p.pos)}: duplicate parameter {p.name}")
            self.locals[p.name] = builder.type_of_name(p.type_name)

    def entity(self) -> MethodEntity:
        for s in self.decl.body:
            self.stmt(s)
        stmts = list(ast.iter_statements(self.decl.body))
        decisions = sum(isinstance(s, (ast.If, ast.While, ast.For)) for s in stmts)
        return MethodEntity(
            method_id(self.cls, self.decl.name),
            self.decl.name,
            class_id(self.cls),
            visibility=self.decl.visibility,
            cyclomatic=1 + decisions,
            statement_count=len(stmts),
            calls=self.calls,
            accesses=self.accesses,
            accessor_of=self.accessor_of(),
        )

    def accessor_of(self) -> Optional[str]:
        """Getter ``return this.f;`` or setter ``this.f = p;`` over an own attribute."""
        body = self.decl.body
        if len(body) != 1:
            return None
        s = body[0]
        own = self.b.classes[self.cls].fields
        if isinstance(s, ast.Return) and _is_this_field(s.value) and s.value.name in own:
            return attr_id(self.cls, s.value.name)
        if (isinstance(s, ast.Assign) and len(self.decl.params) == 1
                and _is_this_field(s.target) and s.target.name in own
                and isinstance(s.value, ast.Name)
                and s.value.ident == self.decl.params[0].name):
            return attr_id(self.cls, s.target.name)
        return None

    # -- statements ----------------------------------------------------------

    def stmt(self, s):
        if isinstance(s, ast.VarDecl):
            if s.init is not None:
                self.expr(s.init)
            if s.name in self.locals:
                raise ModelError(f"{_where(s.pos)}: duplicate local {s.name}")
            self.locals[s.name] = self.b.type_of_name(s.type_name)
        elif isinstance(s, ast.Assign):
            self.expr(s.value)
            self.expr(s.target, assigning=True)
        elif isinstance(s, ast.ExprStmt):
            self.expr(s.expr)
        elif isinstance(s, ast.If):
            self.expr(s.cond)
            for inner in s.then + s.orelse:
                self.stmt(inner)
        elif isinstance(s, ast.While):
            self.expr(s.cond)
            for inner in s.body:
                self.stmt(inner)
        elif isinstance(s, ast.For):
            for part in (s.init, s.update):
                if part is not None:
                    self.stmt(part)
            if s.cond is not None:
                self.expr(s.cond)
            for inner in s.body:
                self.stmt(inner)
        elif isinstance(s, ast.Return):
            if s.value is not None:
                self.expr(s.value)
        else:  # pragma: no cover
            raise TypeError(f"unknown statement {s!r}")

    # -- expressions ---------------------------------------------------------

    def expr(self, e, assigning=False) -> Optional[str]:
        """Record calls/accesses in ``e``; return its static class type if known."""
        if isinstance(e, ast.This):
            return self.cls
        if isinstance(e, ast.IntLit):
            return None
        if isinstance(e, ast.Name):
            if e.ident in self.locals:
                return self.locals[e.ident]
            return self.field(self.cls, e.ident, e.pos, assigning)
        if isinstance(e, ast.FieldAccess):
            owner = self.expr(e.obj)
            if owner is None:
                return None
            return self.field(owner, e.name, e.pos, assigning)
        if isinstance(e, ast.Call):
            owner = self.cls if e.obj is None else self.expr(e.obj)
            for arg in e.args:
                self.expr(arg)
            if owner is not None:
                target = self.b.lookup_method(owner, e.name)
                if target is None:
                    raise ModelError(f"{_where(e.pos)}: unknown method {owner}.{e.name}")
                self.calls.add(target)
            return None
        if isinstance(e, ast.Compare):
            self.expr(e.left)
            self.expr(e.right)
            return None
        raise TypeError(f"unknown expression {e!r}")  # pragma: no cover

    def field(self, owner, name, pos, assigning) -> Optional[str]:
        target, type_name = self.b.lookup_field(owner, name)
        if target is None:
            what = "assignment to undeclared field" if assigning else "undeclared field"
            raise ModelError(f"{_where(pos)}: {what} {owner}.{name}")
        self.accesses.add(target)
        return type_name


def _is_this_field(e) -> bool:
    return isinstance(e, ast.FieldAccess) and isinstance(e.obj, ast.This)


def build_model(program: ast.Program) -> DesignModel:
    return _Builder(program).build()
