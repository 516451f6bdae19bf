"""Tableau translation of NNF formulas into Büchi automata.

The tableau produces a generalized Büchi automaton whose states are sets of
pending obligations and whose transitions carry literal guards; acceptance
is on transitions, one set per ``Until`` subformula.  It is then
degeneralized into an ordinary state-based Büchi automaton with a counter.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .formula import (
    And,
    FalseF,
    Formula,
    Next,
    Not,
    Or,
    Prop,
    Release,
    TrueF,
    Until,
    children,
    is_nnf,
)


@dataclass(frozen=True)
class Guard:
    """Conjunction of positive and negative propositional literals."""

    pos: frozenset[str] = frozenset()
    neg: frozenset[str] = frozenset()

    def holds(self, label: frozenset[str]) -> bool:
        return self.pos <= label and self.neg.isdisjoint(label)

    def __str__(self):
        lits = sorted(self.pos) + ["!" + p for p in sorted(self.neg)]
        return " & ".join(lits) if lits else "true"


@dataclass
class BuchiAutomaton:
    """State-based Büchi automaton; states are ``0..n-1``."""

    initial: tuple[int, ...]
    edges: list[list[tuple[Guard, int]]]
    accepting: frozenset[int]
    names: list[str]

    @property
    def n_states(self) -> int:
        return len(self.edges)

    def step(self, q: int, label: frozenset[str]):
        return [t for g, t in self.edges[q] if g.holds(label)]

    def accepts_lasso(self, prefix, cycle) -> bool:
        """Whether the word ``prefix cycle^omega`` (lists of label sets) is accepted.

        Used only in tests; explores the finite product of automaton states
        with positions of the lasso.
        """
        n, p = len(prefix) + len(cycle), len(prefix)
        word = list(prefix) + list(cycle)

        def nxt(node):
            q, i = node
            j = i + 1 if i + 1 < n else p
            return [(t, j) for t in self.step(q, word[i])]

        seen, order = set(), []
        todo = [(q, 0) for q in self.initial]
        while todo:
            v = todo.pop()
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            todo.extend(nxt(v))
        # an accepting node that lies on a cycle
        for v in order:
            if v[0] not in self.accepting:
                continue
            stack, inner = nxt(v), set()
            while stack:
                w = stack.pop()
                if w == v:
                    return True
                if w not in inner:
                    inner.add(w)
                    stack.extend(nxt(w))
        return False


def _untils(f: Formula, acc: dict):
    if isinstance(f, Until):
        acc.setdefault(f, None)
    for c in children(f):
        _untils(c, acc)
    return acc


def _expand(obligations: frozenset[Formula]):
    """Split a set of obligations into (guard, next obligations, processed) covers."""
    out = []

    def rec(todo, old, pos, neg, nxt):
        if not todo:
            out.append((pos, neg, nxt, old))
            return
        f, rest = todo[0], todo[1:]
        if f in old:
            rec(rest, old, pos, neg, nxt)
            return
        old = old | {f}
        if isinstance(f, TrueF):
            rec(rest, old, pos, neg, nxt)
        elif isinstance(f, FalseF):
            return
        elif isinstance(f, Prop):
            if f.name not in neg:
                rec(rest, old, pos | {f.name}, neg, nxt)
        elif isinstance(f, Not):
            if f.arg.name not in pos:
                rec(rest, old, pos, neg | {f.arg.name}, nxt)
        elif isinstance(f, And):
            rec((f.left, f.right) + rest, old, pos, neg, nxt)
        elif isinstance(f, Or):
            rec((f.left,) + rest, old, pos, neg, nxt)
            rec((f.right,) + rest, old, pos, neg, nxt)
        elif isinstance(f, Next):
            rec(rest, old, pos, neg, nxt | {f.arg})
        elif isinstance(f, Until):
            rec((f.right,) + rest, old, pos, neg, nxt)
            rec((f.left,) + rest, old, pos, neg, nxt | {f})
        elif isinstance(f, Release):
            rec((f.left, f.right) + rest, old, pos, neg, nxt)
            rec((f.right,) + rest, old, pos, neg, nxt | {f})
        else:
            raise TypeError(f"formula not in NNF: {f}")

    # sorted for a hash-seed independent construction order
    rec(tuple(sorted(obligations, key=str)), frozenset(), frozenset(), frozenset(), frozenset())
    return out


def to_buchi(f: Formula) -> BuchiAutomaton:
    """Büchi automaton accepting exactly the words that satisfy ``f`` (NNF)."""
    if not is_nnf(f):
        raise ValueError("to_buchi expects a formula in negation normal form")
    untils = list(_untils(f, {}))
    k = len(untils)

    # generalized automaton over obligation sets
    start = frozenset([f])
    index = {start: 0}
    gba: list[list[tuple[Guard, int, frozenset[int]]]] = []
    queue = deque([start])
    while queue:
        obl = queue.popleft()
        row = {}
        for pos, neg, nxt, old in _expand(obl):
            acc = frozenset(i for i, u in enumerate(untils) if u not in old or u.right in old)
            nxt = frozenset(nxt)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.setdefault((Guard(pos, neg), index[nxt], acc), None)
        gba.append(list(row))
    obl_names = [None] * len(index)
    for obl, i in index.items():
        obl_names[i] = "{" + ", ".join(sorted(map(str, obl))) + "}"

    # degeneralize: counter i in 0..k, state (q, k) accepting
    dindex = {(0, 0): 0}
    edges: list[list[tuple[Guard, int]]] = []
    queue = deque([(0, 0)])
    order = [(0, 0)]
    while queue:
        q, i = queue.popleft()
        row = {}
        for guard, t, acc in gba[q]:
            j = 0 if i == k else i
            while j < k and j in acc:
                j += 1
            node = (t, j)
            if node not in dindex:
                dindex[node] = len(dindex)
                order.append(node)
                queue.append(node)
            row.setdefault((guard, dindex[node]), None)
        edges.append(list(row))
    accepting = frozenset(dindex[n] for n in order if n[1] == k)
    names = [f"{obl_names[q]}#{i}" for q, i in order]
    return BuchiAutomaton((0,), edges, accepting, names)
