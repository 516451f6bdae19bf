"""Direct LTL semantics on ultimately periodic words.

This is deliberately independent of the automaton construction: each
subformula gets a truth vector over the positions of ``prefix + cycle``
and temporal operators are solved as fixpoints over the lasso's successor
function.  Used as a test oracle and to certify counterexamples.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from .formula import (
    Always,
    And,
    Eventually,
    FalseF,
    Formula,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    Release,
    TrueF,
    Until,
)


def eval_on_lasso(f: Formula, prefix: Sequence[frozenset], cycle: Sequence[frozenset]) -> bool:
    """Truth of ``f`` at position 0 of the word ``prefix cycle^omega``."""
    if not cycle:
        raise ValueError("cycle must be non-empty")
    word = [frozenset(x) for x in prefix] + [frozenset(x) for x in cycle]
    n, p = len(word), len(prefix)
    succ = [i + 1 for i in range(n - 1)] + [p]
    memo: dict[Formula, list[bool]] = {}

    def lfp(step):
        val = [False] * n
        changed = True
        while changed:
            changed = False
            for i in reversed(range(n)):
                v = step(i, val)
                if v != val[i]:
                    val[i] = v
                    changed = True
        return val

    def gfp(step):
        val = [True] * n
        changed = True
        while changed:
            changed = False
            for i in reversed(range(n)):
                v = step(i, val)
                if v != val[i]:
                    val[i] = v
                    changed = True
        return val

    def ev(g: Formula) -> list[bool]:
        if g in memo:
            return memo[g]
        if isinstance(g, TrueF):
            r = [True] * n
        elif isinstance(g, FalseF):
            r = [False] * n
        elif isinstance(g, Prop):
            r = [g.name in w for w in word]
        elif isinstance(g, Not):
            r = [not v for v in ev(g.arg)]
        elif isinstance(g, And):
            r = [a and b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Or):
            r = [a or b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Implies):
            r = [(not a) or b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Iff):
            r = [a == b for a, b in zip(ev(g.left), ev(g.right))]
        elif isinstance(g, Next):
            a = ev(g.arg)
            r = [a[succ[i]] for i in range(n)]
        elif isinstance(g, Always):
            a = ev(g.arg)
            r = gfp(lambda i, val: a[i] and val[succ[i]])
        elif isinstance(g, Eventually):
            a = ev(g.arg)
            r = lfp(lambda i, val: a[i] or val[succ[i]])
        elif isinstance(g, Until):
            a, b = ev(g.left), ev(g.right)
            r = lfp(lambda i, val: b[i] or (a[i] and val[succ[i]]))
        elif isinstance(g, Release):
            a, b = ev(g.left), ev(g.right)
            r = gfp(lambda i, val: b[i] and (a[i] or val[succ[i]]))
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[g] = r
        return r

    return ev(f)[0]


def bounded_lassos(
    succ: Sequence[Sequence[int]],
    initial: int = 0,
    max_prefix: int | None = None,
    max_cycle: int | None = None,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every lasso from ``initial`` with bounded prefix and cycle length.

    Both bounds default to the number of states.  States may repeat, so
    this is a superset of the lassos built from simple paths.  Yields
    ``(prefix, cycle)`` with the cycle's last state linked to its first.
    """
    n = len(succ)
    max_prefix = n if max_prefix is None else max_prefix
    max_cycle = n if max_cycle is None else max_cycle
    path = [initial]

    def rec():
        size, last = len(path), path[-1]
        for a in range(max(0, size - max_cycle), min(size, max_prefix + 1)):
            if path[a] in succ[last]:
                yield tuple(path[:a]), tuple(path[a:])
        if size < max_prefix + max_cycle:
            for w in dict.fromkeys(succ[last]):
                path.append(w)
                yield from rec()
                path.pop()

    yield from rec()


def violated_by_enumeration(k, f: Formula) -> tuple | None:
    """Search bounded lassos of Kripke structure ``k`` for a run violating ``f``.

    Returns the first violating ``(prefix, cycle)`` or ``None``.
    """
    neg = Not(f)
    seen: dict = {}
    for prefix, cycle in bounded_lassos(k.succ, k.initial):
        word = (tuple(k.labels[i] for i in prefix), tuple(k.labels[i] for i in cycle))
        if word in seen:
            continue
        seen[word] = hit = eval_on_lasso(neg, *word)
        if hit:
            return prefix, cycle
    return None
