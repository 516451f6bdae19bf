"""The composed machine of an ensemble.

One call to :meth:`ComposedMachine.step` is one synchronous round: every
machine reads its inputs from the environment tuple or from the latched
internal-node values of the *previous* round, then all next states and
latches are written at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    MachineDef,
    MachineSignature,
    SortError,
    Tup,
    Value,
    _check_tuple,
    conforms,
    tuple_sort,
)
from .wiring import EnsembleSpec, InvalidSpec, StateLayout, internal_nodes, state_layout, validate


@dataclass(frozen=True, slots=True)
class ComposedState:
    machine_states: tuple[Value, ...]
    latched: tuple[Value, ...] = ()

    def as_value(self) -> Tup:
        return Tup(self.machine_states + self.latched)

    def __str__(self):
        return "(" + ",".join(map(str, self.machine_states + self.latched)) + ")"


class ComposedMachine:
    """Executable composition of a validated :class:`EnsembleSpec`.

    ``check=True`` verifies sorts of every input, state and machine result
    on each step; it is off by default for state-space exploration.
    """

    def __init__(self, spec: EnsembleSpec, check: bool = False):
        report = validate(spec)
        if not report.ok:
            raise InvalidSpec(report)
        self.spec = spec
        self.check = check
        self.nodes = internal_nodes(spec)
        self.layout: StateLayout = state_layout(spec, self.nodes)
        self.input_sorts = spec.env.output_sorts
        self.output_sorts = spec.env.input_sorts
        latch_index = {q: i for i, q in enumerate(self.nodes)}
        # per machine: for each input slot, (True, k) = env output k, (False, i) = latch i
        self._plans: list[tuple[tuple[bool, int], ...]] = []
        for j, m in enumerate(spec.machines, 1):
            plan = []
            for n in range(1, m.signature.n_inputs + 1):
                q = spec.wiring[(j, n)]
                plan.append((True, q.slot - 1) if q.is_env else (False, latch_index[q]))
            self._plans.append(tuple(plan))
        self._latch_src = tuple((q.owner - 1, q.slot - 1) for q in self.nodes)
        self._env_src = tuple(
            (q.owner - 1, q.slot - 1)
            for q in (spec.wiring[("e", k)] for k in range(1, spec.env.n_inputs + 1))
        )

    @property
    def n_machines(self) -> int:
        return len(self.spec.machines)

    def assemble_input(self, j: int, x: Tup, s: ComposedState) -> Tup:
        """Input tuple of machine ``j`` (1-indexed) in the round reading ``x`` and ``s``."""
        return Tup(
            tuple(x.items[i] if from_env else s.latched[i] for from_env, i in self._plans[j - 1])
        )

    def state_ok(self, s: ComposedState) -> bool:
        return len(s.machine_states) == self.n_machines and len(s.latched) == len(self.nodes) and all(
            conforms(v, srt) for v, srt in zip(s.machine_states + s.latched, self.layout.sorts())
        )

    def step(self, x: Tup, s: ComposedState, order: Sequence[int] | None = None):
        """One round; returns ``(next_state, env_inputs)``.

        ``order`` permutes the (irrelevant) evaluation order of the machines.
        """
        if self.check:
            if not _check_tuple(x, self.input_sorts):
                raise SortError("ill-sorted environment tuple")
            if not self.state_ok(s):
                raise SortError("ill-sorted composed state")
        machines = self.spec.machines
        count = len(machines)
        states: list[Value] = [None] * count  # type: ignore[list-item]
        outs: list[Tup] = [None] * count  # type: ignore[list-item]
        for j0 in order if order is not None else range(count):
            m = machines[j0]
            u = self.assemble_input(j0 + 1, x, s)
            st = s.machine_states[j0]
            states[j0] = m.delta1(u, st)
            outs[j0] = m.delta2(u, st)
            if self.check:
                sig = m.signature
                if not conforms(states[j0], sig.state_sort) or not _check_tuple(outs[j0], sig.output_sorts):
                    raise SortError(f"machine {j0 + 1} ({m.name}) produced ill-sorted results")
        latched = tuple(outs[j].items[m] for j, m in self._latch_src)
        y = Tup(tuple(outs[j].items[m] for j, m in self._env_src))
        return ComposedState(tuple(states), latched), y

    def next_state(self, x: Tup, s: ComposedState) -> ComposedState:
        return self.step(x, s)[0]

    def decode(self, v: Tup) -> ComposedState:
        k = self.n_machines
        return ComposedState(tuple(v.items[:k]), tuple(v.items[k:]))

    def as_machine_def(self, name: str = "composed") -> MachineDef:
        """View this composition as an ordinary machine (state encoded as a tuple)."""
        sig = MachineSignature(
            tuple(self.input_sorts), tuple_sort(*self.layout.sorts()), tuple(self.output_sorts)
        )

        def delta1(x, state):
            return self.step(x, self.decode(state))[0].as_value()

        def delta2(x, state):
            return self.step(x, self.decode(state))[1]

        return MachineDef(name, sig, delta1, delta2)


def compose(spec: EnsembleSpec, check: bool = False) -> ComposedMachine:
    return ComposedMachine(spec, check=check)


def assemble_input(cm: ComposedMachine, j: int, x: Tup, s: ComposedState) -> Tup:
    return cm.assemble_input(j, x, s)


def step_e(cm: ComposedMachine, x: Tup, s: ComposedState):
    return cm.step(x, s)


def as_machine_def(cm: ComposedMachine, name: str = "composed") -> MachineDef:
    return cm.as_machine_def(name)
