"""Random generators and brute-force oracles shared by the tests."""
from __future__ import annotations

import itertools
import random
from importlib import resources

from sync_compose.compose import ComposedState
from sync_compose.core import (
    BOOLEAN,
    ENV,
    FALSE,
    STAR,
    TRUE,
    UNIT,
    Bool,
    EnvSignature,
    MachineDef,
    MachineSignature,
    Port,
    Tup,
    make_machine,
)
from sync_compose.kripke import from_graph
from sync_compose.ltl.formula import (
    FALSE as F_FALSE,
    TRUE as F_TRUE,
    Always,
    And,
    Eventually,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Prop,
    Release,
    Until,
)
from sync_compose.wiring import EnsembleSpec

T, F = TRUE, FALSE


def spec_path(name: str) -> str:
    return str(resources.files("sync_compose") / "specs" / name)


def circuit_spec() -> EnsembleSpec:
    wiring = {
        Port(1, 1): Port(ENV, 1),
        Port(1, 2): Port(ENV, 2),
        Port(2, 1): Port(ENV, 3),
        Port(2, 2): Port(ENV, 4),
        Port(3, 1): Port(1, 1),
        Port(3, 2): Port(2, 1),
        Port(ENV, 1): Port(3, 1),
    }
    env = EnvSignature((BOOLEAN,), (BOOLEAN,) * 4)
    return EnsembleSpec((make_machine("xor2"), make_machine("xor2"), make_machine("and2")), env, wiring)


def bools(*bs) -> Tup:
    return Tup(tuple(Bool(b) for b in bs))


# -- random boolean machines and ensembles ------------------------------------


def table_machine(rng: random.Random, n_in: int, n_out: int, stateful: bool, name="table") -> MachineDef:
    """Machine with random truth tables for next state and outputs."""
    keys = list(itertools.product([False, True], repeat=n_in + 1))
    next_tab = {k: rng.random() < 0.5 for k in keys}
    out_tab = {k: tuple(rng.random() < 0.5 for _ in range(n_out)) for k in keys}
    sig = MachineSignature((BOOLEAN,) * n_in, BOOLEAN if stateful else UNIT, (BOOLEAN,) * n_out)

    def key(i, s):
        return tuple(v.value for v in i) + (s.value if stateful else False,)

    def d1(i, s):
        return Bool(next_tab[key(i, s)]) if stateful else STAR

    def d2(i, s):
        return Tup(tuple(Bool(b) for b in out_tab[key(i, s)]))

    return MachineDef(name, sig, d1, d2)


def random_ensemble(rng: random.Random, max_machines: int = 3) -> EnsembleSpec:
    machines = tuple(
        table_machine(rng, rng.randint(1, 2), rng.randint(1, 2), rng.random() < 0.6, f"t{j}")
        for j in range(1, rng.randint(1, max_machines) + 1)
    )
    n_e, m_e = rng.randint(1, 2), rng.randint(1, 3)
    machine_outs = [Port(j, m) for j, md in enumerate(machines, 1) for m in range(1, md.signature.n_outputs + 1)]
    env_outs = [Port(ENV, k) for k in range(1, m_e + 1)]
    wiring = {}
    for j, md in enumerate(machines, 1):
        for n in range(1, md.signature.n_inputs + 1):
            wiring[Port(j, n)] = rng.choice(machine_outs + env_outs)
    for k in range(1, n_e + 1):
        wiring[Port(ENV, k)] = rng.choice(machine_outs)
    return EnsembleSpec(machines, EnvSignature((BOOLEAN,) * n_e, (BOOLEAN,) * m_e), wiring)


def random_value(rng, sort):
    if sort == UNIT:
        return STAR
    assert sort == BOOLEAN
    return Bool(rng.random() < 0.5)


def random_state(rng, cm) -> ComposedState:
    return ComposedState(
        tuple(random_value(rng, s) for s in cm.layout.machine_state_sorts),
        tuple(random_value(rng, s) for _, s in cm.layout.latched),
    )


def random_input(rng, cm) -> Tup:
    return Tup(tuple(random_value(rng, s) for s in cm.input_sorts))


# -- brute-force per-wire simulator --------------------------------------------


class WireSimulator:
    """Materializes every wire each round; shares nothing with ``compose`` but the deltas."""

    def __init__(self, spec: EnsembleSpec, machine_states, wire_values: dict):
        self.spec = spec
        self.states = list(machine_states)
        # value last driven on each machine output port
        self.wires = dict(wire_values)

    def round(self, x: Tup):
        spec = self.spec
        inputs = {}
        for p, q in spec.wiring.items():
            if p.owner == ENV:
                continue
            inputs[p] = x.items[q.slot - 1] if q.owner == ENV else self.wires[q]
        new_wires, new_states = {}, []
        for j, m in enumerate(spec.machines, 1):
            u = Tup(tuple(inputs[Port(j, n)] for n in range(1, m.signature.n_inputs + 1)))
            new_states.append(m.delta1(u, self.states[j - 1]))
            out = m.delta2(u, self.states[j - 1])
            for idx, v in enumerate(out.items, 1):
                new_wires[Port(j, idx)] = v
        y = Tup(tuple(new_wires[spec.wiring[Port(ENV, k)]] for k in range(1, spec.env.n_inputs + 1)))
        self.states, self.wires = new_states, new_wires
        return y


# -- hierarchical flattening ---------------------------------------------------


def random_hierarchy(rng):
    """An inner ensemble, an outer ensemble using it as machine 1, and the flat equivalent.

    Returns ``(inner, outer_machines_after_1, outer_env, outer_wiring, flat)``.
    """
    inner = random_ensemble(rng, 2)
    a = len(inner.machines)
    extras = tuple(
        table_machine(rng, rng.randint(1, 2), rng.randint(1, 2), rng.random() < 0.5, f"b{b}")
        for b in range(rng.randint(0, 1))
    )
    comp_in, comp_out = inner.env.n_outputs, inner.env.n_inputs
    outer_outs = [Port(1, k) for k in range(1, comp_out + 1)]
    outer_outs += [Port(b, m) for b, md in enumerate(extras, 2) for m in range(1, md.signature.n_outputs + 1)]
    n_e, m_e = rng.randint(1, 2), rng.randint(1, 2)
    env_outs = [Port(ENV, k) for k in range(1, m_e + 1)]
    outer_wiring = {Port(1, k): rng.choice(outer_outs + env_outs) for k in range(1, comp_in + 1)}
    for b, md in enumerate(extras, 2):
        for n in range(1, md.signature.n_inputs + 1):
            outer_wiring[Port(b, n)] = rng.choice(outer_outs + env_outs)
    for k in range(1, n_e + 1):
        outer_wiring[Port(ENV, k)] = rng.choice(outer_outs)
    outer_env = EnvSignature((BOOLEAN,) * n_e, (BOOLEAN,) * m_e)

    def from_outer(q: Port) -> Port:
        if q.owner == ENV:
            return q
        if q.owner == 1:
            return inner.wiring[Port(ENV, q.slot)]
        return Port(a + q.owner - 1, q.slot)

    flat_wiring = {}
    for p, q in inner.wiring.items():
        if p.owner == ENV:
            continue
        flat_wiring[p] = from_outer(outer_wiring[Port(1, q.slot)]) if q.owner == ENV else q
    for p, q in outer_wiring.items():
        if p.owner == 1:
            continue
        target = p if p.owner == ENV else Port(a + p.owner - 1, p.slot)
        flat_wiring[target] = from_outer(q)
    flat = EnsembleSpec(inner.machines + extras, outer_env, flat_wiring)
    return inner, extras, outer_env, outer_wiring, flat, from_outer


# -- MST brute force -----------------------------------------------------------


def brute_force_mst_weight(vertices, edges: dict) -> int | None:
    """Minimum weight over all spanning trees, or None if disconnected."""
    vs = list(vertices)
    if len(vs) <= 1:
        return 0
    best = None
    for combo in itertools.combinations(edges, len(vs) - 1):
        parent = {v: v for v in vs}

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v

        ok = True
        for a, b in combo:
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if ok:
            w = sum(edges[e] for e in combo)
            best = w if best is None or w < best else best
    return best


# -- random LTL material ---------------------------------------------------------


def rand_formula(rng, depth=4, names=("p", "q")):
    if depth <= 1 or rng.random() < 0.25:
        return rng.choice([Prop(n) for n in names] * 2 + [F_TRUE, F_FALSE])
    op = rng.choice([Not, Next, Always, Eventually, And, Or, Implies, Iff, Until, Release])
    if op in (Not, Next, Always, Eventually):
        return op(rand_formula(rng, depth - 1, names))
    return op(rand_formula(rng, depth - 1, names), rand_formula(rng, depth - 1, names))


def rand_kripke(rng, max_states=6, names=("p", "q")):
    n = rng.randint(1, max_states)
    succ = [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(n)]
    labels = [{p for p in names if rng.random() < 0.5} for _ in range(n)]
    return from_graph(succ, labels, props=list(names))


def rand_word(rng, max_len=4, names=("p", "q")):
    def letter():
        return frozenset(p for p in names if rng.random() < 0.5)

    return [letter() for _ in range(rng.randint(0, max_len))], [letter() for _ in range(rng.randint(1, max_len))]


# hand-derived verdicts: (successors, labels, formula, holds)
_K1 = ([[1], [1]], [{"p"}, set()])
_K2 = ([[1], [0]], [{"p"}, {"q"}])
_K3 = ([[0, 1], [1]], [{"p"}, {"q"}])
CURATED = [
    (_K1, "p", True),
    (_K1, "G p", False),
    (_K1, "F G !p", True),
    (_K1, "X p", False),
    (_K1, "p U !p", True),
    (_K1, "G F p", False),
    (_K2, "G (p | q)", True),
    (_K2, "G F p & G F q", True),
    (_K2, "G (p -> X q)", True),
    (_K2, "F G p", False),
    (_K2, "X X p", True),
    (_K3, "F q", False),
    (_K3, "p U q", False),
    (_K3, "(p U q) | G p", True),
    (_K3, "G (q -> G q)", True),
    (_K3, "q R (p | q)", True),
]
