"""Recursive-descent parser for the textual LTL syntax.

Precedence, loosest first::

    <->   ->(right)   |   &   U R (right)   prefix ! X G F

``[]``, ``<>`` and ``O`` are accepted for ``G``, ``F`` and ``X``; ``~``,
``/\\`` and ``\\/`` for ``!``, ``&`` and ``|``.  Identifiers may contain
``?``, ``'`` and interior dashes and may end in an index such as
``failed?(3)`` or ``out(1,2)``.
"""
from __future__ import annotations

import re

from .formula import (
    FALSE,
    TRUE,
    Always,
    And,
    Eventually,
    Formula,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    Release,
    Until,
)


class LTLSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|\[\]|<>|/\\|\\/|[()!~&|])
  | (?P<ident>[A-Za-z_](?:[A-Za-z0-9_?']|-(?!>))*(?:\(\d+(?:,\d+)*\))?)
    """,
    re.VERBOSE,
)

_UNARY = {"!": Not, "~": Not, "X": Next, "O": Next, "G": Always, "[]": Always, "F": Eventually, "<>": Eventually}
_KEYWORDS = {"X", "O", "G", "F", "U", "R", "true", "false"}


def _tokenize(text):
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LTLSyntaxError("unexpected character", text, pos)
        if m.lastgroup != "ws":
            toks.append((m.group(), pos))
        pos = m.end()
    toks.append(("", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg):
        raise LTLSyntaxError(msg, self.text, self.toks[self.i][1])

    def parse(self):
        f = self.iff()
        if self.peek() != "":
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def iff(self):
        f = self.implies()
        if self.peek() == "<->":
            self.take()
            return Iff(f, self.iff())
        return f

    def implies(self):
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self):
        f = self.conj()
        while self.peek() in ("|", "\\/"):
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.until()
        while self.peek() in ("&", "/\\"):
            self.take()
            f = And(f, self.until())
        return f

    def until(self):
        f = self.unary()
        if self.peek() in ("U", "R"):
            op = Until if self.take()[0] == "U" else Release
            return op(f, self.until())
        return f

    def unary(self):
        tok = self.peek()
        if tok in _UNARY:
            self.take()
            return _UNARY[tok](self.unary())
        return self.atom()

    def atom(self):
        tok, pos = self.toks[self.i]
        if tok == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok and (tok[0].isalpha() or tok[0] == "_") and tok not in _KEYWORDS:
            self.take()
            return Prop(tok)
        self.fail("expected a formula" if tok else "unexpected end of input")


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()
