"""Tokenizer for the model language.

Tokens carry 1-based source spans. `//` comments run to end of line.
A dot token records whether it was glued to its neighbours, which is how
the parser tells projection dots (`F1.object`) from declaration
terminators (`... .`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from desiree.diagnostics import Span

# Token kinds.
IDENT = "IDENT"
NUMBER = "NUMBER"
STRING = "STRING"
VAR = "VAR"
SYM = "SYM"  # punctuation; the text field holds the symbol itself
EOF = "EOF"

_SYMBOLS = ("::", ":<", "<=", ">=", "<", ">", ":", "{", "}", "(", ")",
            "[", "]", ",", ".", "|", "&", "-", "=", "%", "/")


class LexError(Exception):
    def __init__(self, span: Span, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span
    value: object = None  # Fraction for NUMBER, unescaped str for STRING
    glued_left: bool = False
    glued_right: bool = False

    def is_sym(self, s: str) -> bool:
        return self.kind == SYM and self.text == s


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(text: str) -> list[Token]:
    """Tokenize `text`, raising LexError on malformed input."""
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def span() -> Span:
        return Span(line, col)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        # Whitespace.
        if ch in " \t\r\n":
            advance(1)
            continue
        # Comments.
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                advance(1)
            continue
        start = span()
        # Strings.
        if ch == '"':
            i0 = i
            advance(1)
            buf = []
            while True:
                if i >= n or text[i] == "\n":
                    raise LexError(start, "unterminated string")
                c = text[i]
                if c == "\\" and i + 1 < n and text[i + 1] in ('"', "\\"):
                    buf.append(text[i + 1])
                    advance(2)
                    continue
                if c == '"':
                    advance(1)
                    break
                buf.append(c)
                advance(1)
            tokens.append(Token(STRING, text[i0:i], start, value="".join(buf)))
            continue
        # Variables.
        if ch == "?":
            advance(1)
            if i >= n or not _is_ident_start(text[i]):
                raise LexError(start, "expected identifier after '?'")
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            name = text[i:j]
            advance(j - i)
            tokens.append(Token(VAR, "?" + name, start, value=name))
            continue
        # Numbers: digits, optionally a decimal part (dot must be followed
        # by a digit, else the dot is punctuation).
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            lit = text[i:j]
            advance(j - i)
            tokens.append(Token(NUMBER, lit, start, value=Fraction(lit)))
            continue
        # Identifiers.
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            name = text[i:j]
            advance(j - i)
            tokens.append(Token(IDENT, name, start))
            continue
        # Punctuation, longest match first.
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                glued_left = i > 0 and text[i - 1] not in " \t\r\n"
                end = i + len(sym)
                glued_right = end < n and text[end] not in " \t\r\n"
                advance(len(sym))
                tokens.append(Token(SYM, sym, start,
                                    glued_left=glued_left,
                                    glued_right=glued_right))
                break
        else:
            raise LexError(start, f"unexpected character {ch!r}")
    tokens.append(Token(EOF, "", Span(line, col)))
    return tokens
