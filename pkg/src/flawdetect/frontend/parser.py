"""Recursive-descent parser for MiniOO.

Grammar::

    program    = {classdecl} ;
    classdecl  = "class" IDENT ["extends" IDENT] "{" {member} "}" ;
    member     = attrdecl | methoddecl ;
    attrdecl   = ("public"|"private") "var" IDENT ":" IDENT ";" ;
    methoddecl = ("public"|"private") "def" IDENT "(" [params] ")" block ;
    params     = IDENT ":" IDENT {"," IDENT ":" IDENT} ;
    block      = "{" {stmt} "}" ;
    stmt       = vardecl | assign | exprstmt | ifstmt | whilestmt | forstmt | returnstmt ;
    vardecl    = "var" IDENT ":" IDENT ["=" expr] ";" ;
    assign     = lvalue "=" expr ";" ;
    lvalue     = ["this" "."] IDENT ["." IDENT] ;
    exprstmt   = expr ";" ;
    ifstmt     = "if" "(" expr ")" block ["else" block] ;
    whilestmt  = "while" "(" expr ")" block ;
    forstmt    = "for" "(" [assign-no-semi] ";" [expr] ";" [assign-no-semi] ")" block ;
    returnstmt = "return" [expr] ";" ;
    expr       = postfix [cmp postfix] ;
    postfix    = primary {"." IDENT ["(" [args] ")"]} ;
    primary    = "this" | IDENT ["(" [args] ")"] | INT | "(" expr ")" ;
    args       = expr {"," expr} ;
    cmp        = ">" | "<" | "==" ;
"""

from __future__ import annotations

from typing import Iterable

from ..errors import ParseError
from . import syntax as ast
from .lexer import EOF, IDENT, INTEGER, KEYWORD, PUNCT, Token, tokenize

VISIBILITY = ("public", "private")
COMPARISONS = (">", "<", "==")


class Parser:
    def __init__(self, tokens: list[Token], path: str | None = None):
        self.tokens = tokens
        self.path = path
        self.i = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def pos(self, tok: Token | None = None):
        tok = tok or self.tok
        return (self.path, tok.line, tok.column)

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == EOF else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.line, tok.column, self.path)

    def at(self, kind, text=None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def at_punct(self, text) -> bool:
        return self.at(PUNCT, text)

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != EOF:
            self.i += 1
        return tok

    def expect(self, kind, text=None) -> Token:
        if not self.at(kind, text):
            what = f"{text!r}" if text else kind
            raise self.error(f"expected {what}")
        return self.advance()

    def ident(self) -> str:
        return self.expect(IDENT).text

    # -- declarations --------------------------------------------------------

    def program(self) -> list[ast.ClassDecl]:
        classes = []
        while not self.at(EOF):
            classes.append(self.classdecl())
        return classes

    def classdecl(self) -> ast.ClassDecl:
        start = self.expect(KEYWORD, "class")
        name = self.ident()
        superclass = None
        if self.at(KEYWORD, "extends"):
            self.advance()
            superclass = self.ident()
        self.expect(PUNCT, "{")
        attrs, methods = [], []
        while not self.at_punct("}"):
            member = self.member()
            (attrs if isinstance(member, ast.AttrDecl) else methods).append(member)
        self.expect(PUNCT, "}")
        return ast.ClassDecl(name, superclass, tuple(attrs), tuple(methods), self.pos(start))

    def member(self):
        start = self.tok
        if not (self.tok.kind == KEYWORD and self.tok.text in VISIBILITY):
            raise self.error("expected 'public' or 'private'")
        visibility = self.advance().text
        if self.at(KEYWORD, "var"):
            self.advance()
            name = self.ident()
            self.expect(PUNCT, ":")
            type_name = self.ident()
            self.expect(PUNCT, ";")
            return ast.AttrDecl(name, visibility, type_name, self.pos(start))
        if self.at(KEYWORD, "def"):
            self.advance()
            name = self.ident()
            self.expect(PUNCT, "(")
            params = []
            if not self.at_punct(")"):
                params.append(self.param())
                while self.at_punct(","):
                    self.advance()
                    params.append(self.param())
            self.expect(PUNCT, ")")
            body = self.block()
            return ast.MethodDecl(name, visibility, tuple(params), body, self.pos(start))
        raise self.error("expected 'var' or 'def'")

    def param(self) -> ast.Param:
        start = self.tok
        name = self.ident()
        self.expect(PUNCT, ":")
        return ast.Param(name, self.ident(), self.pos(start))

    # -- statements ----------------------------------------------------------

    def block(self) -> tuple:
        self.expect(PUNCT, "{")
        stmts = []
        while not self.at_punct("}"):
            if self.at(EOF):
                raise self.error("expected '}'")
            stmts.append(self.statement())
        self.expect(PUNCT, "}")
        return tuple(stmts)

    def statement(self):
        start = self.tok
        if self.at(KEYWORD, "var"):
            self.advance()
            name = self.ident()
            self.expect(PUNCT, ":")
            type_name = self.ident()
            init = None
            if self.at_punct("="):
                self.advance()
                init = self.expr()
            self.expect(PUNCT, ";")
            return ast.VarDecl(name, type_name, init, self.pos(start))
        if self.at(KEYWORD, "if"):
            self.advance()
            cond = self.paren_expr()
            then = self.block()
            orelse = ()
            if self.at(KEYWORD, "else"):
                self.advance()
                orelse = self.block()
            return ast.If(cond, then, orelse, self.pos(start))
        if self.at(KEYWORD, "while"):
            self.advance()
            cond = self.paren_expr()
            return ast.While(cond, self.block(), self.pos(start))
        if self.at(KEYWORD, "for"):
            self.advance()
            self.expect(PUNCT, "(")
            init = None if self.at_punct(";") else self.assignment()
            self.expect(PUNCT, ";")
            cond = None if self.at_punct(";") else self.expr()
            self.expect(PUNCT, ";")
            update = None if self.at_punct(")") else self.assignment()
            self.expect(PUNCT, ")")
            return ast.For(init, cond, update, self.block(), self.pos(start))
        if self.at(KEYWORD, "return"):
            self.advance()
            value = None if self.at_punct(";") else self.expr()
            self.expect(PUNCT, ";")
            return ast.Return(value, self.pos(start))
        expr = self.expr()
        if self.at_punct("="):
            stmt = self.finish_assignment(expr, start)
        else:
            stmt = ast.ExprStmt(expr, self.pos(start))
        self.expect(PUNCT, ";")
        return stmt

    def assignment(self) -> ast.Assign:
        start = self.tok
        target = self.postfix()
        if not self.at_punct("="):
            raise self.error("expected '='")
        return self.finish_assignment(target, start)

    def finish_assignment(self, target, start) -> ast.Assign:
        if not _is_lvalue(target):
            raise self.error("invalid assignment target", start)
        self.expect(PUNCT, "=")
        return ast.Assign(target, self.expr(), self.pos(start))

    # -- expressions ---------------------------------------------------------

    def paren_expr(self):
        self.expect(PUNCT, "(")
        e = self.expr()
        self.expect(PUNCT, ")")
        return e

    def expr(self):
        start = self.tok
        left = self.postfix()
        if self.tok.kind == PUNCT and self.tok.text in COMPARISONS:
            op = self.advance().text
            right = self.postfix()
            return ast.Compare(op, left, right, self.pos(start))
        return left

    def postfix(self):
        e = self.primary()
        while self.at_punct("."):
            self.advance()
            tok = self.tok
            name = self.ident()
            if self.at_punct("("):
                e = ast.Call(e, name, self.args(), self.pos(tok))
            else:
                e = ast.FieldAccess(e, name, self.pos(tok))
        return e

    def primary(self):
        tok = self.tok
        if tok.kind == IDENT:
            self.advance()
            if tok.text == "this":
                return ast.This(self.pos(tok))
            if self.at_punct("("):
                return ast.Call(None, tok.text, self.args(), self.pos(tok))
            return ast.Name(tok.text, self.pos(tok))
        if tok.kind == INTEGER:
            self.advance()
            return ast.IntLit(int(tok.text), self.pos(tok))
        if self.at_punct("("):
            return self.paren_expr()
        raise self.error("expected expression")

    def args(self) -> tuple:
        self.expect(PUNCT, "(")
        args = []
        if not self.at_punct(")"):
            args.append(self.expr())
            while self.at_punct(","):
                self.advance()
                args.append(self.expr())
        self.expect(PUNCT, ")")
        return tuple(args)


def _is_lvalue(e) -> bool:
    # ["this" "."] IDENT ["." IDENT]
    if isinstance(e, ast.Name):
        return True
    if isinstance(e, ast.FieldAccess):
        inner = e.obj
        if isinstance(inner, (ast.This, ast.Name)):
            return True
        return isinstance(inner, ast.FieldAccess) and isinstance(inner.obj, ast.This)
    return False


def parse_program(files: Iterable[tuple[str, list[Token]]]) -> ast.Program:
    """Parse already-tokenized files into one Program."""
    classes = []
    for path, tokens in files:
        classes.extend(Parser(tokens, path).program())
    return ast.Program(tuple(classes))


def parse_sources(sources: Iterable[tuple[str, str]]) -> ast.Program:
    """Tokenize and parse ``(path, text)`` pairs."""
    sources = list(sources)
    paths = [p for p, _ in sources]
    if len(set(paths)) != len(paths):
        raise ValueError("duplicate source paths")
    return parse_program((path, tokenize(text, path)) for path, text in sources)
