"""Wiring diagrams: validation, internal nodes and composed-state layout."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .core import ENV, EnvSignature, MachineDef, Port, Sort


@dataclass(frozen=True)
class EnsembleSpec:
    """Machines indexed 1..|J|, an environment signature and the ``src`` map."""

    machines: tuple[MachineDef, ...]
    env: EnvSignature
    wiring: Mapping[Port, Port]

    def __post_init__(self):
        if not self.machines:
            raise ValueError("an ensemble needs at least one machine")
        object.__setattr__(self, "machines", tuple(self.machines))
        wiring = {Port(*k): Port(*v) for k, v in dict(self.wiring).items()}
        object.__setattr__(self, "wiring", MappingProxyType(wiring))

    def __hash__(self):
        return hash((self.machines, self.env, frozenset(self.wiring.items())))

    def __eq__(self, other):
        if not isinstance(other, EnsembleSpec):
            return NotImplemented
        return (self.machines, self.env, dict(self.wiring)) == (
            other.machines,
            other.env,
            dict(other.wiring),
        )

    def machine(self, j: int) -> MachineDef:
        return self.machines[j - 1]

    def input_ports(self) -> list[Port]:
        """All ports that need a source, machines first then the environment."""
        ports = [
            Port(j, n)
            for j, m in enumerate(self.machines, 1)
            for n in range(1, m.signature.n_inputs + 1)
        ]
        ports += [Port(ENV, k) for k in range(1, self.env.n_inputs + 1)]
        return ports

    def output_ports(self) -> list[Port]:
        ports = [
            Port(j, n)
            for j, m in enumerate(self.machines, 1)
            for n in range(1, m.signature.n_outputs + 1)
        ]
        ports += [Port(ENV, k) for k in range(1, self.env.n_outputs + 1)]
        return ports

    def input_sort(self, p: Port) -> Sort:
        if p.is_env:
            return self.env.input_sorts[p.slot - 1]
        return self.machine(p.owner).signature.input_sorts[p.slot - 1]

    def output_sort(self, p: Port) -> Sort:
        if p.is_env:
            return self.env.output_sorts[p.slot - 1]
        return self.machine(p.owner).signature.output_sorts[p.slot - 1]

    def has_input(self, p: Port) -> bool:
        if p.is_env:
            return 1 <= p.slot <= self.env.n_inputs
        return (
            isinstance(p.owner, int)
            and 1 <= p.owner <= len(self.machines)
            and 1 <= p.slot <= self.machine(p.owner).signature.n_inputs
        )

    def has_output(self, p: Port) -> bool:
        if p.is_env:
            return 1 <= p.slot <= self.env.n_outputs
        return (
            isinstance(p.owner, int)
            and 1 <= p.owner <= len(self.machines)
            and 1 <= p.slot <= self.machine(p.owner).signature.n_outputs
        )


# -- validation issues -------------------------------------------------------


@dataclass(frozen=True)
class MissingSource:
    port: Port

    def __str__(self):
        return f"MissingSource{self.port}: input port has no source"


@dataclass(frozen=True)
class DanglingSource:
    port: Port
    source: Port

    def __str__(self):
        return f"DanglingSource{self.source}: source of {self.port} is not an output port"


@dataclass(frozen=True)
class UnknownInput:
    port: Port

    def __str__(self):
        return f"UnknownInput{self.port}: wiring maps a port that is not an input"


@dataclass(frozen=True)
class SortMismatch:
    source: Port
    target: Port
    source_sort: Sort
    target_sort: Sort

    def __str__(self):
        return (
            f"SortMismatch{self.source}->{self.target}: "
            f"{self.source_sort} does not fit {self.target_sort}"
        )


@dataclass(frozen=True)
class EnvPassThrough:
    port: Port

    def __str__(self):
        return f"EnvPassThrough{self.port}: environment input wired to environment output"


@dataclass(frozen=True)
class UnusedOutput:
    port: Port

    def __str__(self):
        return f"UnusedOutput{self.port}: machine output feeds nothing"


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple = ()
    warnings: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def __str__(self):
        lines = [f"error: {e}" for e in self.errors]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) if lines else "ok"


class InvalidSpec(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__("invalid ensemble:\n" + str(report))
        self.report = report


def validate(spec: EnsembleSpec) -> ValidationReport:
    """Check totality of ``src``, existence of sources and sort compatibility.

    Problems are collected into the report, never raised.
    """
    errors, warnings = [], []
    src = spec.wiring
    for p in spec.input_ports():
        if p not in src:
            errors.append(MissingSource(p))
    for p in sorted(src, key=_port_key):
        q = src[p]
        if not spec.has_input(p):
            errors.append(UnknownInput(p))
            continue
        if not spec.has_output(q):
            errors.append(DanglingSource(p, q))
            continue
        if p.is_env and q.is_env:
            errors.append(EnvPassThrough(p))
            continue
        if not spec.input_sort(p).accepts(spec.output_sort(q)):
            errors.append(SortMismatch(q, p, spec.output_sort(q), spec.input_sort(p)))
    used = set(src.values())
    for q in spec.output_ports():
        if not q.is_env and q not in used:
            warnings.append(UnusedOutput(q))
    return ValidationReport(tuple(errors), tuple(warnings))


def _port_key(p: Port):
    # machine ports first (ascending), then environment ports
    return (1, 0, p.slot) if p.is_env else (0, p.owner, p.slot)


def internal_nodes(spec: EnsembleSpec) -> list[Port]:
    """Machine output ports read by at least one machine input, ascending."""
    nodes = {q for p, q in spec.wiring.items() if not p.is_env and not q.is_env}
    return sorted(nodes)


@dataclass(frozen=True)
class StateLayout:
    machine_state_sorts: tuple[Sort, ...]
    latched: tuple[tuple[Port, Sort], ...] = field(default=())

    def __len__(self):
        return len(self.machine_state_sorts) + len(self.latched)

    def sorts(self) -> list[Sort]:
        return list(self.machine_state_sorts) + [s for _, s in self.latched]


def state_layout(spec: EnsembleSpec, nodes: Sequence[Port] | None = None) -> StateLayout:
    if nodes is None:
        nodes = internal_nodes(spec)
    return StateLayout(
        tuple(m.signature.state_sort for m in spec.machines),
        tuple((q, spec.output_sort(q)) for q in nodes),
    )
