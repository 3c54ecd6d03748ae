"""
Recursive-descent parser for the concrete formula syntax.

    formula := impl
    impl    := or ("->" impl)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := ("~" | "<le>" | "[le]" | "<lt>" | "[lt]" | "[gt]" | "(=)" | "F" | "<F>") unary
             | atom
    atom    := "T" | "B" | "Bp" | "Bnp" | "Up" | "(" formula ")"

Derived operators are expanded while parsing (see logic.formula).
"""
from __future__ import annotations

import logging
import re
from typing import Callable, Dict, List, NamedTuple, Optional

from logic.formula import (
    B,
    BNP,
    BP,
    TOP,
    And,
    BoxF,
    BoxLeq,
    DiamF,
    DiamLeq,
    EqTheta,
    Formula,
    Not,
    disj,
    gt_box,
    impl,
    strict_box,
    strict_diamond,
    undecided,
)
from threshold.errors import ParseError

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<sym><le>|\[le\]|<lt>|\[lt\]|\[gt\]|\(=\)|<F>|->|[~&|()])|(?P<word>[A-Za-z_][A-Za-z0-9_]*))"
)

_PREFIX: Dict[str, Callable[[Formula], Formula]] = {
    "~": Not,
    "<le>": DiamLeq,
    "[le]": BoxLeq,
    "<lt>": strict_diamond,
    "[lt]": strict_box,
    "[gt]": gt_box,
    "(=)": EqTheta,
    "F": BoxF,
    "<F>": DiamF,
}

_CONSTANTS: Dict[str, Callable[[], Formula]] = {
    "T": lambda: TOP,
    "B": lambda: B,
    "Bp": lambda: BP,
    "Bnp": lambda: BNP,
    "Up": undecided,
}


class Token(NamedTuple):
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unknown token {text[bad]!r}", bad)
        start = m.start("sym") if m.group("sym") else m.start("word")
        word = m.group("word")
        if word is not None and word not in _CONSTANTS and word != "F":
            raise ParseError(f"unknown token {word!r}", start)
        tokens.append(Token(m.group("sym") or word, start))
        pos = m.end()
    return tokens


class FormulaParser:
    """One-shot parser over a token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # ----------
    def _peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> Token:
        tok = self._peek()
        if tok is None:
            if self.tokens:
                last = self.tokens[-1]
                raise ParseError(f"dangling operator {last.text!r}", last.pos)
            raise ParseError("empty formula", 0)
        self.pos += 1
        return tok

    # ----------
    def parse(self) -> Formula:
        f = self._impl()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok.text!r}", tok.pos)
        return f

    def _impl(self) -> Formula:
        left = self._or()
        tok = self._peek()
        if tok is not None and tok.text == "->":
            self.pos += 1
            return impl(left, self._impl())
        return left

    def _or(self) -> Formula:
        left = self._and()
        while (tok := self._peek()) is not None and tok.text == "|":
            self.pos += 1
            left = disj(left, self._and())
        return left

    def _and(self) -> Formula:
        left = self._unary()
        while (tok := self._peek()) is not None and tok.text == "&":
            self.pos += 1
            left = And(left, self._unary())
        return left

    def _unary(self) -> Formula:
        tok = self._next()
        if tok.text in _PREFIX:
            return _PREFIX[tok.text](self._unary())
        if tok.text in _CONSTANTS:
            return _CONSTANTS[tok.text]()
        if tok.text == "(":
            inner = self._impl()
            close = self._peek()
            if close is None or close.text != ")":
                raise ParseError("unbalanced parenthesis", tok.pos)
            self.pos += 1
            return inner
        if tok.text in ("&", "|", "->"):
            raise ParseError(f"dangling operator {tok.text!r}", tok.pos)
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)


def parse(text: str) -> Formula:
    return FormulaParser(text).parse()
