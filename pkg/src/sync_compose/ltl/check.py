"""Automata-theoretic LTL model checking with nested depth-first search."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Mapping

from ..kripke import KripkeStructure
from .buchi import to_buchi
from .formula import Formula, Not, expand, props, to_nnf
from .oracle import eval_on_lasso


class UnknownProposition(KeyError):
    def __str__(self):
        return f"unknown proposition(s): {', '.join(self.args[0])}"


@dataclass(frozen=True)
class Lasso:
    """Counterexample ``prefix cycle^omega`` over Kripke state indices."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")

    def states(self) -> tuple[int, ...]:
        return self.prefix + self.cycle

    def format(self, k: KripkeStructure | None = None) -> str:
        head = "prefix: " + (" ".join(f"s{i}" for i in self.prefix) or "-")
        head += " / cycle: " + " ".join(f"s{i}" for i in self.cycle)
        if k is None:
            return head
        lines = [head]
        for i in dict.fromkeys(self.states()):
            lines.append(f"  s{i}: {k.states[i]} | {' '.join(sorted(k.labels[i]))}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: Lasso | None
    kripke_states: int
    product_states: int
    automaton_states: int
    seconds: float


def _normalize(prefix: list[int], cycle: list[int]) -> Lasso:
    # shortest period of the cycle
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            cycle = cycle[:p]
            break
    # fold the prefix tail into the cycle while the word stays the same
    while prefix and prefix[-1] == cycle[-1]:
        cycle = [prefix.pop()] + cycle[:-1]
    return Lasso(tuple(prefix), tuple(cycle))


def model_check(k: KripkeStructure, f: Formula, macros: Mapping[str, Formula] | None = None) -> Verdict:
    """Decide whether every run of ``k`` from its initial state satisfies ``f``.

    Searches the product of ``k`` with a Büchi automaton for ``!f`` for an
    accepting cycle; the cycle, projected onto ``k``, is the counterexample.
    """
    t0 = time.perf_counter()
    if macros:
        f = expand(f, macros)
    unknown = props(f) - set(k.props)
    if unknown:
        raise UnknownProposition(sorted(unknown))
    aut = to_buchi(to_nnf(Not(f)))
    labels, ksucc, accepting = k.labels, k.succ, aut.accepting
    edges = aut.edges

    def successors(node):
        s, q = node
        lab = labels[s]
        return [(s2, q2) for g, q2 in edges[q] if g.holds(lab) for s2 in ksucc[s]]

    outer_seen: set = set()
    inner_seen: set = set()
    found = None
    for q0 in aut.initial:
        root = (k.initial, q0)
        if root in outer_seen:
            continue
        outer_seen.add(root)
        stack = [(root, iter(successors(root)))]
        while stack and found is None:
            node, it = stack[-1]
            for w in it:
                if w not in outer_seen:
                    outer_seen.add(w)
                    stack.append((w, iter(successors(w))))
                    break
            else:
                stack.pop()
                if node[1] in accepting:
                    cyc = _inner(node, successors, inner_seen)
                    if cyc is not None:
                        found = ([n for n, _ in stack], node, cyc)
        if found is not None:
            break

    elapsed = time.perf_counter() - t0
    n_product = len(outer_seen | inner_seen)
    if found is None:
        return Verdict(True, None, len(k), n_product, aut.n_states, elapsed)
    path, seed, cyc = found
    prefix = [s for s, _ in path]
    cycle = [seed[0]] + [s for s, _ in cyc]
    return Verdict(False, _normalize(prefix, cycle), len(k), n_product, aut.n_states, elapsed)


def _inner(seed, successors, seen):
    """Search for a path back to ``seed``; returns the nodes after ``seed`` on the cycle."""
    stack = [(seed, iter(successors(seed)))]
    while stack:
        node, it = stack[-1]
        for w in it:
            if w == seed:
                return [n for n, _ in stack[1:]]
            if w not in seen:
                seen.add(w)
                stack.append((w, iter(successors(w))))
                break
        else:
            stack.pop()
    return None


def replay_lasso(k: KripkeStructure, lasso: Lasso, f: Formula, macros: Mapping[str, Formula] | None = None) -> bool:
    """Certify a counterexample: edge-valid in ``k`` and violating ``f``."""
    if macros:
        f = expand(f, macros)
    seq = lasso.states()
    if not lasso.cycle or seq[0] != k.initial or any(not 0 <= i < len(k) for i in seq):
        return False
    pairs = list(zip(seq, seq[1:])) + [(lasso.cycle[-1], lasso.cycle[0])]
    if not all(k.has_edge(a, b) for a, b in pairs):
        return False
    return eval_on_lasso(
        Not(f), [k.labels[i] for i in lasso.prefix], [k.labels[i] for i in lasso.cycle]
    )
