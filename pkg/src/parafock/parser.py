"""Parser for the operator expression language.

Grammar::

    expr    := ['+'|'-'] product (('+'|'-') product)*
    product := factor factor*            # juxtaposition multiplies
    factor  := NUMBER ['/' NUMBER] | ATOM | '(' expr ')'
             | '[' expr ',' expr ']'     # commutator
             | '{' expr ',' expr '}'     # anticommutator

Atoms are ``b+ b- f+ f-`` and the builtin names ``R_plus R_minus N_b N_f
N_s`` (``R+``/``R-`` are accepted as aliases). ``1`` is the identity word.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .ladder import Generator
from .words import (
    AlgebraElement,
    Builtin,
    anticommutator,
    builtin_element,
    commutator,
    gen,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<gen>[bf][+-])
  | (?P<number>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*[+-]?)
  | (?P<punct>[-+/(){}\[\],*·])
    """,
    re.VERBOSE,
)

_ALIASES = {"R+": Builtin.R_PLUS, "R-": Builtin.R_MINUS}


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = match.lastgroup
        assert kind is not None
        if kind == "name" and match.group()[-1] in "+-" and match.group() not in _ALIASES:
            # a trailing sign belongs to the operator that follows, not to the name
            tokens.append(Token("name", match.group()[:-1], pos))
            pos = match.end() - 1
            continue
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, p: int | None):
        self.text = text
        self.p = p
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        if self.tok.value != value or self.tok.kind == "end":
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.value)
            raise ParseError(f"expected {value!r}, found {found}", self.tok.pos, self.text)
        self.advance()

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.tok.pos, self.text)

    def parse(self) -> AlgebraElement:
        result = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        return result

    def expr(self) -> AlgebraElement:
        sign = 1
        if self.tok.value in "+-" and self.tok.kind == "punct":
            sign = -1 if self.advance().value == "-" else 1
        total = sign * self.product()
        while self.tok.kind == "punct" and self.tok.value in ("+", "-"):
            op = self.advance().value
            term = self.product()
            total = total + term if op == "+" else total - term
        return total

    def _starts_factor(self) -> bool:
        tok = self.tok
        return tok.kind in ("gen", "number", "name") or tok.value in ("(", "[", "{")

    def product(self) -> AlgebraElement:
        if not self._starts_factor():
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.value)
            raise self.error(f"expected an operator or number, found {found}")
        result = self.factor()
        while self._starts_factor() or self.tok.value in ("*", "·"):
            if self.tok.value in ("*", "·"):
                self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> AlgebraElement:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            value = Fraction(int(tok.value))
            if self.tok.value == "/":
                self.advance()
                if self.tok.kind != "number":
                    raise self.error("expected a denominator")
                den = int(self.advance().value)
                if den == 0:
                    raise ParseError("zero denominator", tok.pos, self.text)
                value /= den
            return AlgebraElement.scalar(value)
        if tok.kind == "gen":
            self.advance()
            return gen(Generator(tok.value))
        if tok.kind == "name":
            self.advance()
            return self.builtin(tok)
        if tok.value == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.value in ("[", "{"):
            close = "]" if tok.value == "[" else "}"
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(close)
            return commutator(left, right) if close == "]" else anticommutator(left, right)
        raise self.error(f"unexpected {tok.value!r}")

    def builtin(self, tok: Token) -> AlgebraElement:
        name = _ALIASES.get(tok.value)
        if name is None:
            try:
                name = Builtin(tok.value)
            except ValueError:
                raise ParseError(f"unknown atom {tok.value!r}", tok.pos, self.text) from None
        if name in (Builtin.R_PLUS, Builtin.R_MINUS):
            return builtin_element(name, 1)
        if self.p is None:
            raise ParseError(f"{tok.value} depends on p; pass p to the parser", tok.pos, self.text)
        return builtin_element(name, self.p)


def parse_element(text: str, p: int | None = None) -> AlgebraElement:
    """Parse a DSL expression into an expanded ``AlgebraElement``.

    ``p`` is only needed for the number operators, whose expansions carry
    p-dependent constants.
    """
    return _Parser(text, p).parse()

