"""Sorted values, ports and the synchronous machine interface.

Every wire and every machine state carries a :class:`Value`.  Values are
immutable and hash structurally, so composed states can be deduplicated
directly when building a state graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence, Union


class SortError(TypeError):
    """A value does not conform to the sort it is used at."""


# ---------------------------------------------------------------------------
# Sorts


@dataclass(frozen=True)
class Sort:
    kind: str
    params: tuple["Sort", ...] = ()

    def __post_init__(self):
        if self.kind == "tuple" and not self.params:
            raise ValueError("tuple sorts need arity >= 1")
        if self.kind == "optional" and len(self.params) != 1:
            raise ValueError("optional sorts wrap exactly one sort")

    def accepts(self, other: "Sort") -> bool:
        """Whether a value of sort ``other`` may be used where ``self`` is expected."""
        if self == other:
            return True
        return self.kind == "optional" and self.params[0] == other

    def __str__(self):
        if self.kind == "tuple":
            return "(" + ",".join(str(p) for p in self.params) + ")"
        if self.kind == "optional":
            return f"{self.params[0]}?"
        return self.kind


UNIT = Sort("unit")
BOOLEAN = Sort("boolean")
NATURAL = Sort("natural")
STATUS = Sort("status")
MESSAGE = Sort("message")
ID_LIST = Sort("idList")
# LMST node state: either ``failed`` or (id, x, y, routing)
NODE_STATE = Sort("nodeState")


def tuple_sort(*params: Sort) -> Sort:
    return Sort("tuple", tuple(params))


def optional(inner: Sort) -> Sort:
    return Sort("optional", (inner,))


MSG_PLUS = optional(MESSAGE)

_ATOMIC_SORTS = {s.kind: s for s in (UNIT, BOOLEAN, NATURAL, STATUS, MESSAGE, ID_LIST, NODE_STATE)}


def parse_sort(text: str) -> Sort:
    """Parse the textual sort notation used in spec files.

    ``boolean``, ``message?`` (optional), ``(boolean,status)`` (tuple).
    """
    text = text.strip()
    if text.endswith("?"):
        return optional(parse_sort(text[:-1]))
    if text.startswith("(") and text.endswith(")"):
        parts, depth, cur = [], 0, ""
        for ch in text[1:-1]:
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            depth += ch == "("
            depth -= ch == ")"
            cur += ch
        parts.append(cur)
        return tuple_sort(*(parse_sort(p) for p in parts))
    try:
        return _ATOMIC_SORTS[text]
    except KeyError:
        raise ValueError(f"unknown sort {text!r}") from None


# ---------------------------------------------------------------------------
# Values


class Value:
    """Base class of all wire and state values."""

    __slots__ = ()

    @property
    def sort(self) -> Sort:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Star(Value):
    @property
    def sort(self):
        return UNIT

    def __str__(self):
        return "*"


@dataclass(frozen=True, slots=True)
class Bool(Value):
    value: bool

    @property
    def sort(self):
        return BOOLEAN

    def __str__(self):
        return "T" if self.value else "F"


@dataclass(frozen=True, slots=True)
class Nat(Value):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("naturals are non-negative")

    @property
    def sort(self):
        return NATURAL

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, slots=True)
class Status(Value):
    ok: bool

    @property
    def sort(self):
        return STATUS

    def __str__(self):
        return "ok" if self.ok else "fail"


@dataclass(frozen=True, slots=True)
class Msg(Value):
    """Hello message: sender id and grid coordinates."""

    id: int
    x: int
    y: int

    def __post_init__(self):
        if self.id < 1:
            raise ValueError("message ids are >= 1")
        if self.x < 0 or self.y < 0:
            raise ValueError("coordinates are naturals")

    @property
    def sort(self):
        return MESSAGE

    def __str__(self):
        return f"({self.id},{self.x},{self.y})"


@dataclass(frozen=True, slots=True)
class NoMsg(Value):
    @property
    def sort(self):
        return MSG_PLUS

    def __str__(self):
        return "nomsg"


@dataclass(frozen=True, slots=True)
class IdList(Value):
    ids: tuple[int, ...]

    def __post_init__(self):
        if any(i < 1 for i in self.ids):
            raise ValueError("ids are positive integers")

    @property
    def sort(self):
        return ID_LIST

    def __str__(self):
        return "[" + ",".join(map(str, self.ids)) + "]"


@dataclass(frozen=True, slots=True)
class Tup(Value):
    items: tuple[Value, ...]

    def __post_init__(self):
        if not self.items:
            raise ValueError("tuples have arity >= 1")

    @property
    def sort(self):
        return tuple_sort(*(v.sort for v in self.items))

    def __len__(self):
        return len(self.items)

    def __iter__(self) -> Iterator[Value]:
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.items)) + ")"


@dataclass(frozen=True, slots=True)
class Failed(Value):
    @property
    def sort(self):
        return NODE_STATE

    def __str__(self):
        return "failed"


@dataclass(frozen=True, slots=True)
class NodeSt(Value):
    """State of a live LMST node."""

    id: int
    x: int
    y: int
    routing: tuple[int, ...] = ()

    def __post_init__(self):
        if self.id < 1:
            raise ValueError("node ids are >= 1")
        if self.id in self.routing or len(set(self.routing)) != len(self.routing):
            raise ValueError("routing must be duplicate-free and exclude the node itself")

    @property
    def sort(self):
        return NODE_STATE

    def __str__(self):
        return f"({self.id},{self.x},{self.y},[" + ",".join(map(str, self.routing)) + "])"


STAR = Star()
TRUE = Bool(True)
FALSE = Bool(False)
OK = Status(True)
FAIL = Status(False)
NOMSG = NoMsg()
FAILED = Failed()


def tup(*items: Value) -> Tup:
    return Tup(tuple(items))


def sort_of(v: Value) -> Sort:
    return v.sort


def conforms(v: Value, s: Sort) -> bool:
    return s.accepts(v.sort)


def project(v: Tup, k: int) -> Value:
    """Return the k-th component (1-indexed) of a tuple value."""
    if not isinstance(v, Tup) or not 1 <= k <= len(v.items):
        raise IndexError("projection out of range")
    return v.items[k - 1]


# ---------------------------------------------------------------------------
# Ports


ENV = "e"
Owner = Union[int, str]


class Port(NamedTuple):
    owner: Owner
    slot: int

    @property
    def is_env(self) -> bool:
        return self.owner == ENV

    def __str__(self):
        return f"({self.owner},{self.slot})"


def parse_port(text: str) -> Port:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"malformed port {text!r}")
    owner, _, slot = body[1:-1].partition(",")
    owner, slot = owner.strip(), slot.strip()
    try:
        port = Port(ENV if owner == ENV else int(owner), int(slot))
    except ValueError:
        raise ValueError(f"malformed port {text!r}") from None
    if port.slot < 1 or (port.owner != ENV and port.owner < 1):
        raise ValueError(f"malformed port {text!r}")
    return port


# ---------------------------------------------------------------------------
# Machines


@dataclass(frozen=True)
class MachineSignature:
    input_sorts: tuple[Sort, ...]
    state_sort: Sort
    output_sorts: tuple[Sort, ...]

    def __post_init__(self):
        if not self.input_sorts or not self.output_sorts:
            raise ValueError("machines need at least one input and one output")

    @property
    def n_inputs(self) -> int:
        return len(self.input_sorts)

    @property
    def n_outputs(self) -> int:
        return len(self.output_sorts)


@dataclass(frozen=True)
class MachineDef:
    """A synchronous machine with its transition split in two halves.

    ``delta1(inputs, state)`` gives the next state and ``delta2(inputs, state)``
    the output tuple.  Both must be pure.
    """

    name: str
    signature: MachineSignature
    delta1: Callable[[Tup, Value], Value] = field(compare=False)
    delta2: Callable[[Tup, Value], Tup] = field(compare=False)


@dataclass(frozen=True)
class EnvSignature:
    """Environment boundary: ``input_sorts`` flow to it, ``output_sorts`` come from it."""

    input_sorts: tuple[Sort, ...]
    output_sorts: tuple[Sort, ...]

    def __post_init__(self):
        if not self.input_sorts or not self.output_sorts:
            raise ValueError("environments need n_e >= 1 and m_e >= 1")

    @property
    def n_inputs(self) -> int:
        return len(self.input_sorts)

    @property
    def n_outputs(self) -> int:
        return len(self.output_sorts)


def _check_tuple(v: Value, sorts: Sequence[Sort]) -> bool:
    return (
        isinstance(v, Tup)
        and len(v.items) == len(sorts)
        and all(conforms(x, s) for x, s in zip(v.items, sorts))
    )


def step_machine(m: MachineDef, inputs: Tup, state: Value, check: bool = True) -> tuple[Value, Tup]:
    """Run one round of ``m``; returns ``(next_state, outputs)``."""
    sig = m.signature
    if check and (not _check_tuple(inputs, sig.input_sorts) or not conforms(state, sig.state_sort)):
        raise SortError("ill-sorted machine input/state")
    nxt = m.delta1(inputs, state)
    out = m.delta2(inputs, state)
    if check and (not conforms(nxt, sig.state_sort) or not _check_tuple(out, sig.output_sorts)):
        raise SortError(f"machine {m.name} produced ill-sorted state/output")
    return nxt, out


# ---------------------------------------------------------------------------
# Registry

_REGISTRY: dict[str, Callable[..., MachineDef]] = {}


def register(name: str):
    """Register a machine factory under ``name`` (used by spec files)."""

    def deco(factory):
        _REGISTRY[name] = factory
        return factory

    return deco


def make_machine(kind: str, **params) -> MachineDef:
    if kind not in _REGISTRY:
        # lmst registers itself on import
        from . import lmst  # noqa: F401
    try:
        factory = _REGISTRY[kind]
    except KeyError:
        raise KeyError(f"unknown machine kind {kind!r}") from None
    return factory(**params)


def registered_kinds() -> list[str]:
    from . import lmst  # noqa: F401

    return sorted(_REGISTRY)


def _gate(name, arity, fn):
    sig = MachineSignature((BOOLEAN,) * arity, UNIT, (BOOLEAN,))

    def delta1(inputs, state):
        return STAR

    def delta2(inputs, state):
        return tup(Bool(fn(*(v.value for v in inputs))))

    return MachineDef(name, sig, delta1, delta2)


@register("xor2")
def xor2() -> MachineDef:
    return _gate("xor2", 2, lambda a, b: a != b)


@register("and2")
def and2() -> MachineDef:
    return _gate("and2", 2, lambda a, b: a and b)


@register("or2")
def or2() -> MachineDef:
    return _gate("or2", 2, lambda a, b: a or b)


@register("not1")
def not1() -> MachineDef:
    return _gate("not1", 1, lambda a: not a)


@register("buf1")
def buf1() -> MachineDef:
    return _gate("buf1", 1, lambda a: a)


@register("dff")
def dff() -> MachineDef:
    """One-bit register: outputs the stored bit and stores its input."""
    sig = MachineSignature((BOOLEAN,), BOOLEAN, (BOOLEAN,))
    return MachineDef("dff", sig, lambda i, s: i[0], lambda i, s: tup(s))
