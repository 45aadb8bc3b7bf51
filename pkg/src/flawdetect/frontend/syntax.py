"""AST node types produced by the MiniOO parser.

Every node carries ``pos = (path, line, column)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Pos = tuple  # (path, line, column)


# -- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class This:
    pos: Pos


@dataclass(frozen=True)
class Name:
    ident: str
    pos: Pos


@dataclass(frozen=True)
class IntLit:
    value: int
    pos: Pos


@dataclass(frozen=True)
class FieldAccess:
    obj: "Expr"
    name: str
    pos: Pos


@dataclass(frozen=True)
class Call:
    obj: Optional["Expr"]  # None for an unqualified call on the current object
    name: str
    args: tuple
    pos: Pos


@dataclass(frozen=True)
class Compare:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Pos


Expr = Union[This, Name, IntLit, FieldAccess, Call, Compare]


# -- statements --------------------------------------------------------------

@dataclass(frozen=True)
class VarDecl:
    name: str
    type_name: str
    init: Optional[Expr]
    pos: Pos


@dataclass(frozen=True)
class Assign:
    target: Expr  # Name or FieldAccess
    value: Expr
    pos: Pos


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr
    pos: Pos


@dataclass(frozen=True)
class If:
    cond: Expr
    then: tuple
    orelse: tuple
    pos: Pos


@dataclass(frozen=True)
class While:
    cond: Expr
    body: tuple
    pos: Pos


@dataclass(frozen=True)
class For:
    init: Optional[Assign]
    cond: Optional[Expr]
    update: Optional[Assign]
    body: tuple
    pos: Pos


@dataclass(frozen=True)
class Return:
    value: Optional[Expr]
    pos: Pos


Stmt = Union[VarDecl, Assign, ExprStmt, If, While, For, Return]


# -- declarations ------------------------------------------------------------

@dataclass(frozen=True)
class Param:
    name: str
    type_name: str
    pos: Pos


@dataclass(frozen=True)
class AttrDecl:
    name: str
    visibility: str
    type_name: str
    pos: Pos


@dataclass(frozen=True)
class MethodDecl:
    name: str
    visibility: str
    params: tuple
    body: tuple
    pos: Pos


@dataclass(frozen=True)
class ClassDecl:
    name: str
    superclass: Optional[str]
    attributes: tuple
    methods: tuple
    pos: Pos


@dataclass(frozen=True)
class Program:
    classes: tuple = field(default_factory=tuple)


def iter_statements(stmts):
    """Depth-first walk over every statement node, nested ones included."""
    for s in stmts:
        yield s
        if isinstance(s, If):
            yield from iter_statements(s.then)
            yield from iter_statements(s.orelse)
        elif isinstance(s, (While, For)):
            yield from iter_statements(s.body)
