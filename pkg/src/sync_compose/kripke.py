"""Explicit-state Kripke structures induced by a nondeterministic environment."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .compose import ComposedMachine, ComposedState
from .core import BOOLEAN, FAIL, FALSE, OK, TRUE, Tup

log = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 10**6


class StateBudgetExceeded(RuntimeError):
    def __init__(self, count: int):
        super().__init__(f"state budget exceeded after {count} states")
        self.count = count


@dataclass(frozen=True)
class Proposition:
    name: str
    eval: Callable[[ComposedState], bool]


def nat_to_env_input(k: int, bits: int) -> Tup:
    """Status tuple whose i-th component is ``fail`` iff bit i-1 of ``k`` is set."""
    if bits < 1 or not 0 <= k < 1 << bits:
        raise ValueError(f"{k} is not representable in {bits} bits")
    return Tup(tuple(FAIL if k & (1 << i) else OK for i in range(bits)))


def enumerate_env_inputs(bits: int) -> tuple[Tup, ...]:
    """All ``2**bits`` status tuples, ascending by their bit encoding."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    return tuple(nat_to_env_input(k, bits) for k in range(1 << bits))


def enumerate_bool_inputs(bits: int) -> tuple[Tup, ...]:
    """Boolean analog of :func:`enumerate_env_inputs` (bit set means true)."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    return tuple(
        Tup(tuple(TRUE if k & (1 << i) else FALSE for i in range(bits))) for k in range(1 << bits)
    )


def env_input_set(inputs: Iterable[Tup]) -> tuple[Tup, ...]:
    """Deduplicate while keeping first-occurrence order."""
    out = tuple(dict.fromkeys(inputs))
    if not out:
        raise ValueError("environment input set must be non-empty")
    return out


def successors(cm: ComposedMachine, inputs: Sequence[Tup], s: ComposedState) -> list[ComposedState]:
    """Distinct next states of ``s``, in order of first appearance over ``inputs``."""
    return list(dict.fromkeys(cm.step(x, s)[0] for x in inputs))


@dataclass(frozen=True)
class KripkeStructure:
    states: tuple[ComposedState, ...]
    succ: tuple[tuple[int, ...], ...]
    labels: tuple[frozenset[str], ...]
    props: tuple[str, ...]
    initial: int = 0

    def __len__(self):
        return len(self.states)

    @property
    def n_edges(self) -> int:
        return sum(map(len, self.succ))

    def has_edge(self, i: int, j: int) -> bool:
        return 0 <= i < len(self.succ) and j in self.succ[i]

    def dump(self) -> str:
        """Debug listing: one line per state, then one line per edge."""
        lines = [
            f"#{i}: {s} | {' '.join(sorted(lab))}" for i, (s, lab) in enumerate(zip(self.states, self.labels))
        ]
        lines += [f"#{i} -> #{j}" for i, js in enumerate(self.succ) for j in js]
        return "\n".join(lines) + "\n"


def from_graph(succ: Sequence[Sequence[int]], labels: Sequence[Iterable[str]], props=None, initial=0) -> KripkeStructure:
    """Build a bare structure (states are indices) for testing the checker."""
    labels = tuple(frozenset(lab) for lab in labels)
    if props is None:
        props = sorted(set().union(*labels)) if labels else []
    return KripkeStructure(
        tuple(ComposedState((), ()) for _ in succ),
        tuple(tuple(dict.fromkeys(js)) for js in succ),
        labels,
        tuple(props),
        initial,
    )


def build_state_graph(
    cm: ComposedMachine,
    inputs: Sequence[Tup],
    init: ComposedState,
    props: Sequence[Proposition],
    max_states: int = DEFAULT_MAX_STATES,
) -> KripkeStructure:
    """Breadth-first reachable closure of ``init`` under every environment input."""
    if max_states <= 0:
        raise ValueError("max_states must be positive")
    if not inputs:
        raise ValueError("environment input set must be non-empty")
    if not cm.state_ok(init):
        raise ValueError("initial state does not match the composed state layout")
    index = {init: 0}
    states = [init]
    succ: list[tuple[int, ...]] = []
    queue = deque([init])
    while queue:
        s = queue.popleft()
        row = []
        for t in successors(cm, inputs, s):
            i = index.get(t)
            if i is None:
                if len(states) >= max_states:
                    raise StateBudgetExceeded(len(states) + 1)
                i = index[t] = len(states)
                states.append(t)
                queue.append(t)
            row.append(i)
        succ.append(tuple(row))
    labels = tuple(frozenset(p.name for p in props if p.eval(s)) for s in states)
    log.info("built state graph: %d states, %d edges", len(states), sum(map(len, succ)))
    return KripkeStructure(tuple(states), tuple(succ), labels, tuple(p.name for p in props))


def boolean_props(cm: ComposedMachine) -> tuple[Proposition, ...]:
    """Generic labeling: ``state(j)`` for boolean machine states, ``out(j,m)`` for boolean latches."""
    props = [
        Proposition(f"state({j})", lambda s, j=j: s.machine_states[j - 1] == TRUE)
        for j, srt in enumerate(cm.layout.machine_state_sorts, 1)
        if srt == BOOLEAN
    ]
    props += [
        Proposition(f"out({q.owner},{q.slot})", lambda s, i=i: s.latched[i] == TRUE)
        for i, (q, srt) in enumerate(cm.layout.latched)
        if srt == BOOLEAN
    ]
    return tuple(props)
