"""SOD strategy scripts: parsing and pretty-printing.

    file     = {strategy} ;
    strategy = IDENT ":=" orexpr ";" ;
    orexpr   = andexpr {"or" andexpr} ;
    andexpr  = atom {("and"|"butnot") atom} ;
    atom     = "(" METRIC "," filter ")" | "(" orexpr ")" ;
    filter   = NAME "(" arg {"," arg} ")" | NAME ;
    arg      = NUMBER ["%"] | "$" IDENT ;

``#`` starts a line comment. ``$name`` arguments are tuning holes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from ..errors import SpecError, StrategyNameError, StrategySyntaxError, StrategyTypeError
from ..metrics import Metric
from .filters import AND, BUTNOT, FILTERS, OR, FilterSpec, Hole, Number


@dataclass(frozen=True)
class Atom:
    metric: Metric
    filter: FilterSpec

    def __str__(self):
        return f"({self.metric}, {self.filter})"


@dataclass(frozen=True)
class Compose:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Atom, Compose]


@dataclass(frozen=True)
class StrategyAst:
    name: str
    target_kind: str
    expr: Expr

    def __str__(self):
        return f"{self.name} := {format_expr(self.expr)};"

    def atoms(self) -> list[Atom]:
        return list(iter_atoms(self.expr))

    def metrics(self) -> list[Metric]:
        """Metrics in order of first appearance."""
        return list(dict.fromkeys(a.metric for a in iter_atoms(self.expr)))

    def holes(self) -> list[str]:
        return list(dict.fromkeys(h for a in iter_atoms(self.expr) for h in a.filter.holes))


def iter_atoms(expr):
    if isinstance(expr, Atom):
        yield expr
    else:
        yield from iter_atoms(expr.left)
        yield from iter_atoms(expr.right)


def And(left, right):
    return Compose(AND, left, right)


def Or(left, right):
    return Compose(OR, left, right)


def ButNot(left, right):
    return Compose(BUTNOT, left, right)


# -- printing ----------------------------------------------------------------

def format_expr(expr: Expr) -> str:
    if isinstance(expr, Atom):
        return str(expr)
    left, right = expr.left, expr.right
    if expr.op == OR:
        left_s = format_expr(left)
        right_s = _paren(right) if isinstance(right, Compose) and right.op == OR else format_expr(right)
    else:
        left_s = _paren(left) if isinstance(left, Compose) and left.op == OR else format_expr(left)
        right_s = _paren(right) if isinstance(right, Compose) else format_expr(right)
    return f"{left_s} {expr.op} {right_s}"


def _paren(expr):
    return f"({format_expr(expr)})"


def format_file(strategies) -> str:
    return "".join(f"{s}\n" for s in strategies)


# -- lexing ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<assign>:=)"
    r"|(?P<number>-?[0-9]+(?:\.[0-9]+)?)"
    r"|(?P<hole>\$[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[(),;%])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text, path):
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise StrategySyntaxError(f"unexpected character {text[pos]!r}", line, column, path)
        if m.lastgroup not in ("ws", "comment"):
            toks.append(_Tok(m.lastgroup, m.group(), line, column))
        nl = m.group().count("\n")
        if nl:
            line += nl
            line_start = pos + m.group().rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# -- parsing -----------------------------------------------------------------

class _Parser:
    def __init__(self, text, path=None):
        self.path = path
        self.toks = _tokenize(text, path)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.tok
        if tok.kind != "eof":
            self.i += 1
        return tok

    def error(self, cls, message, tok=None):
        tok = tok or self.tok
        return cls(message, tok.line, tok.column, self.path)

    def expect(self, kind, text=None):
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(StrategySyntaxError, f"expected {text or kind!r}, found {found}")
        return self.advance()

    def at(self, kind, text=None):
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def file(self):
        strategies = []
        names = set()
        while not self.at("eof"):
            start = self.tok
            s = self.strategy()
            if s.name in names:
                raise self.error(StrategyNameError, f"duplicate strategy {s.name!r}", start)
            names.add(s.name)
            strategies.append(s)
        return strategies

    def strategy(self):
        name_tok = self.expect("ident")
        self.expect("assign")
        self.atom_kinds = []
        expr = self.orexpr()
        self.expect("punct", ";")
        kinds = {k for k, _ in self.atom_kinds}
        if len(kinds) > 1:
            first_kind = self.atom_kinds[0][0]
            tok = next(t for k, t in self.atom_kinds if k != first_kind)
            raise self.error(
                StrategyTypeError,
                f"strategy {name_tok.text!r} mixes class and method metrics", tok,
            )
        return StrategyAst(name_tok.text, kinds.pop(), expr)

    def orexpr(self):
        left = self.andexpr()
        while self.at("ident", OR):
            self.advance()
            left = Compose(OR, left, self.andexpr())
        return left

    def andexpr(self):
        left = self.atom()
        while self.at("ident", AND) or self.at("ident", BUTNOT):
            op = self.advance().text
            left = Compose(op, left, self.atom())
        return left

    def atom(self):
        self.expect("punct", "(")
        if self.at("punct", "("):
            expr = self.orexpr()
            self.expect("punct", ")")
            return expr
        metric_tok = self.expect("ident")
        try:
            metric = Metric(metric_tok.text)
        except ValueError:
            raise self.error(StrategyNameError, f"unknown metric {metric_tok.text!r}", metric_tok) from None
        self.expect("punct", ",")
        f = self.filter()
        self.expect("punct", ")")
        self.atom_kinds.append((metric.entity_kind, metric_tok))
        return Atom(metric, f)

    def filter(self):
        name_tok = self.expect("ident")
        if name_tok.text not in FILTERS:
            raise self.error(StrategyNameError, f"unknown filter {name_tok.text!r}", name_tok)
        args = []
        if self.at("punct", "("):
            self.advance()
            args.append(self.arg())
            while self.at("punct", ","):
                self.advance()
                args.append(self.arg())
            self.expect("punct", ")")
        spec = FilterSpec(name_tok.text, tuple(args))
        try:
            _check_partial(spec)
        except SpecError as exc:
            raise self.error(StrategySyntaxError, str(exc), name_tok) from None
        return spec

    def arg(self):
        if self.at("hole"):
            return Hole(self.advance().text)
        num = self.expect("number")
        percent = False
        if self.at("punct", "%"):
            self.advance()
            percent = True
        return Number(Fraction(num.text), percent)


def _check_partial(spec: FilterSpec):
    """Validate a filter whose holes are still open (arity and shape only)."""
    if spec.holes:
        arity, _ = FILTERS[spec.name]
        if len(spec.args) != arity:
            raise SpecError(f"{spec.name} takes {arity} argument(s), got {len(spec.args)}")
        return
    spec.check()


def parse_file(text: str, path=None) -> list[StrategyAst]:
    """Parse every strategy in an SOD script."""
    return _Parser(text, path).file()


def parse_strategy(text: str, path=None) -> StrategyAst:
    """Parse a script containing exactly one strategy."""
    strategies = parse_file(text, path)
    if len(strategies) != 1:
        raise StrategySyntaxError(f"expected exactly one strategy, found {len(strategies)}", path=path)
    return strategies[0]


def load_file(path) -> list[StrategyAst]:
    return parse_file(Path(path).read_text(encoding="utf-8"), str(path))
