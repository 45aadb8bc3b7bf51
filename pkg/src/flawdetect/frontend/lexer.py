"""Tokenizer for MiniOO source text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset(
    {"class", "extends", "public", "private", "var", "def",
     "if", "else", "while", "for", "return"}
)

KEYWORD = "keyword"
IDENT = "identifier"
PUNCT = "punct"
INTEGER = "integer"
EOF = "eof"

# longest match first: "==" must win over "="
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<punct>==|[{}();:,.=<>])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text: str, path: str | None = None) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise LexError(f"illegal character {text[pos]!r}", line, column, path)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "ident":
            tokens.append(Token(KEYWORD if lexeme in KEYWORDS else IDENT, lexeme, line, column))
        elif kind == "int":
            tokens.append(Token(INTEGER, lexeme, line, column))
        elif kind == "punct":
            tokens.append(Token(PUNCT, lexeme, line, column))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token(EOF, "", line, pos - line_start + 1))
    return tokens
