"""
LRJ Calculus Workbench
.geo Lexer

Splits source text into tokens carrying 1-based line and column.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List


class ParseError(ValueError):
    """Lexical, syntactic or semantic error at a source position."""

    def __init__(self, message: str, line: int, column: int, token: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        super().__init__(f"line {line}, column {column}: {message}")


class TokenKind(Enum):
    IDENT = "identifier"
    NUMBER = "number"
    PARTIAL = "d/d<coordinate>"
    SYMBOL = "symbol"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def is_symbol(self, text: str) -> bool:
        return self.kind is TokenKind.SYMBOL and self.text == text

    def is_word(self, text: str) -> bool:
        return self.kind is TokenKind.IDENT and self.text == text

    @property
    def shown(self) -> str:
        return "end of input" if self.kind is TokenKind.EOF else repr(self.text)


_PATTERNS = [
    (None, re.compile(r"[ \t\r]+|#[^\n]*")),
    (TokenKind.PARTIAL, re.compile(r"d/d[A-Za-z_][A-Za-z0-9_]*")),
    (TokenKind.NUMBER, re.compile(r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")),
    (TokenKind.IDENT, re.compile(r"[A-Za-z_][A-Za-z0-9_]*")),
    (TokenKind.SYMBOL, re.compile(r"\*\*|[-+*/^()\[\]{},;:=]")),
]


def tokenize(source: str) -> List[Token]:
    """
    Tokenize ``source``.

    Raises:
        ParseError: unexpected character
    """
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        if source[pos] == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        for kind, pattern in _PATTERNS:
            match = pattern.match(source, pos)
            if match:
                if kind is not None:
                    tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
                pos = match.end()
                break
        else:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1, source[pos])
    tokens.append(Token(TokenKind.EOF, "", line, pos - line_start + 1))
    return tokens
