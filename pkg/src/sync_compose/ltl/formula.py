"""LTL abstract syntax, negation normal form and macro expansion."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping


class Formula:
    __slots__ = ()

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)


@dataclass(frozen=True, slots=True)
class TrueF(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True, slots=True)
class FalseF(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True, slots=True)
class Prop(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula

    def __str__(self):
        return f"!{self.arg}"


@dataclass(frozen=True, slots=True)
class Next(Formula):
    arg: Formula

    def __str__(self):
        return f"X {self.arg}"


@dataclass(frozen=True, slots=True)
class Always(Formula):
    arg: Formula

    def __str__(self):
        return f"G {self.arg}"


@dataclass(frozen=True, slots=True)
class Eventually(Formula):
    arg: Formula

    def __str__(self):
        return f"F {self.arg}"


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula
    op = "&"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula
    op = "|"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula
    op = "->"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula
    op = "<->"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True, slots=True)
class Until(Formula):
    left: Formula
    right: Formula
    op = "U"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True, slots=True)
class Release(Formula):
    left: Formula
    right: Formula
    op = "R"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


TRUE = TrueF()
FALSE = FalseF()

UNARY = (Not, Next, Always, Eventually)
BINARY = (And, Or, Implies, Iff, Until, Release)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.arg,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def props(f: Formula) -> set[str]:
    if isinstance(f, Prop):
        return {f.name}
    out: set[str] = set()
    for c in children(f):
        out |= props(c)
    return out


def depth(f: Formula) -> int:
    return 1 + max((depth(c) for c in children(f)), default=0)


def is_nnf(f: Formula) -> bool:
    if isinstance(f, Not):
        return isinstance(f.arg, Prop)
    if isinstance(f, (Implies, Iff, Always, Eventually)):
        return False
    return all(is_nnf(c) for c in children(f))


def to_nnf(f: Formula) -> Formula:
    """Push negations to propositions; only And/Or/Next/Until/Release remain."""
    return _pos(f)


def _pos(f):
    if isinstance(f, (TrueF, FalseF, Prop)):
        return f
    if isinstance(f, Not):
        return _neg(f.arg)
    if isinstance(f, And):
        return And(_pos(f.left), _pos(f.right))
    if isinstance(f, Or):
        return Or(_pos(f.left), _pos(f.right))
    if isinstance(f, Implies):
        return Or(_neg(f.left), _pos(f.right))
    if isinstance(f, Iff):
        return Or(And(_pos(f.left), _pos(f.right)), And(_neg(f.left), _neg(f.right)))
    if isinstance(f, Next):
        return Next(_pos(f.arg))
    if isinstance(f, Always):
        return Release(FALSE, _pos(f.arg))
    if isinstance(f, Eventually):
        return Until(TRUE, _pos(f.arg))
    if isinstance(f, Until):
        return Until(_pos(f.left), _pos(f.right))
    if isinstance(f, Release):
        return Release(_pos(f.left), _pos(f.right))
    raise TypeError(f"not a formula: {f!r}")


def _neg(f):
    if isinstance(f, TrueF):
        return FALSE
    if isinstance(f, FalseF):
        return TRUE
    if isinstance(f, Prop):
        return Not(f)
    if isinstance(f, Not):
        return _pos(f.arg)
    if isinstance(f, And):
        return Or(_neg(f.left), _neg(f.right))
    if isinstance(f, Or):
        return And(_neg(f.left), _neg(f.right))
    if isinstance(f, Implies):
        return And(_pos(f.left), _neg(f.right))
    if isinstance(f, Iff):
        return Or(And(_pos(f.left), _neg(f.right)), And(_neg(f.left), _pos(f.right)))
    if isinstance(f, Next):
        return Next(_neg(f.arg))
    if isinstance(f, Always):
        return Until(TRUE, _neg(f.arg))
    if isinstance(f, Eventually):
        return Release(FALSE, _neg(f.arg))
    if isinstance(f, Until):
        return Release(_neg(f.left), _neg(f.right))
    if isinstance(f, Release):
        return Until(_neg(f.left), _neg(f.right))
    raise TypeError(f"not a formula: {f!r}")


class MacroError(ValueError):
    pass


def expand(f: Formula, macros: Mapping[str, Formula]) -> Formula:
    """Replace every ``Prop`` naming a macro by its (recursively expanded) body."""
    cache: dict[str, Formula] = {}

    def name(n, active):
        if n in cache:
            return cache[n]
        if n in active:
            raise MacroError(f"cyclic formula definition through {n!r}")
        cache[n] = go(macros[n], active | {n})
        return cache[n]

    def go(g, active):
        if isinstance(g, Prop):
            return name(g.name, active) if g.name in macros else g
        if isinstance(g, UNARY):
            return type(g)(go(g.arg, active))
        if isinstance(g, BINARY):
            return type(g)(go(g.left, active), go(g.right, active))
        return g

    return go(f, frozenset())
