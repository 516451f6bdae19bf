"""Synchronous composition of machines, Kripke structures and LTL checking."""
from .compose import ComposedMachine, ComposedState, compose
from .core import (
    BOOLEAN,
    ENV,
    FAIL,
    FAILED,
    FALSE,
    MSG_PLUS,
    NOMSG,
    OK,
    STAR,
    TRUE,
    Bool,
    EnvSignature,
    MachineDef,
    MachineSignature,
    Msg,
    NodeSt,
    Port,
    Sort,
    SortError,
    Tup,
    Value,
    make_machine,
    project,
    sort_of,
    step_machine,
    tup,
)
from .kripke import (
    KripkeStructure,
    Proposition,
    StateBudgetExceeded,
    build_state_graph,
    enumerate_env_inputs,
    nat_to_env_input,
    successors,
)
from .wiring import EnsembleSpec, InvalidSpec, ValidationReport, internal_nodes, state_layout, validate

__version__ = "0.1.0"
