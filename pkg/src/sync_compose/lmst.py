"""LMST topology control nodes as synchronous machines.

Each round a live node broadcasts a hello message (id and coordinates),
builds a distance-weighted graph from the hellos it heard in the previous
round, computes its minimum spanning tree and keeps the one-hop tree
neighbors as its routing table.  The environment decides per round which
nodes fail; failure is permanent.

Distances are squared Euclidean and therefore exact integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .compose import ComposedState
from .core import (
    ENV,
    FAILED,
    MSG_PLUS,
    NODE_STATE,
    NOMSG,
    STATUS,
    EnvSignature,
    MachineDef,
    MachineSignature,
    Msg,
    NodeSt,
    Port,
    Status,
    Tup,
    Value,
    register,
    tup,
)
from .kripke import Proposition, enumerate_env_inputs
from .wiring import EnsembleSpec

DEFAULT_POSITIONS = ((1, 0, 0), (2, 10, 0), (3, 20, 0), (4, 10, 10), (5, 20, 10))
DEFAULT_RMAX_SQUARED = 1000


def sq_dist(a: tuple[int, int], b: tuple[int, int]) -> int:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


@dataclass(frozen=True)
class WeightedGraph:
    vertices: Mapping[int, tuple[int, int]]
    edges: Mapping[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def complete(cls, vertices: Mapping[int, tuple[int, int]], rmax_squared: int | None = None):
        """Graph on ``vertices`` with every pair in range joined by its squared distance."""
        ids = sorted(vertices)
        edges = {}
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                w = sq_dist(vertices[a], vertices[b])
                if rmax_squared is None or w <= rmax_squared:
                    edges[(a, b)] = w
        return cls(MappingProxyType(dict(vertices)), MappingProxyType(edges))

    def weight(self, edges) -> int:
        return sum(self.edges[e] for e in edges)


def visible_graph(node: NodeSt, heard: Sequence[Value], rmax_squared: int) -> WeightedGraph:
    """The node's local view: itself plus every in-range sender it heard from."""
    here = (node.x, node.y)
    vertices = {node.id: here}
    for h in heard:
        if isinstance(h, Msg) and h.id != node.id and sq_dist(here, (h.x, h.y)) <= rmax_squared:
            vertices[h.id] = (h.x, h.y)
    return WeightedGraph.complete(vertices, rmax_squared)


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def mst(g: WeightedGraph) -> frozenset[tuple[int, int]]:
    """Minimum spanning forest by Kruskal; ties broken by (weight, min id, max id)."""
    uf = _UnionFind(g.vertices)
    tree = []
    for (a, b), w in sorted(g.edges.items(), key=lambda e: (e[1], e[0])):
        if uf.union(a, b):
            tree.append((a, b))
    return frozenset(tree)


def routing_update(inputs: Tup, node: NodeSt, rmax_squared: int) -> tuple[int, ...]:
    """One-hop neighbors of ``node`` in the MST of its visible graph, ascending."""
    tree = mst(visible_graph(node, inputs.items[:-1], rmax_squared))
    return tuple(sorted({b if a == node.id else a for a, b in tree if node.id in (a, b)}))


def tx_power_squared(node: NodeSt, positions: Mapping[int, tuple[int, int]]) -> int:
    """Squared range needed to reach the furthest routing neighbor (0 if none)."""
    here = (node.x, node.y)
    return max((sq_dist(here, positions[r]) for r in node.routing), default=0)


def _failing(inputs: Tup) -> bool:
    st = inputs.items[-1]
    return isinstance(st, Status) and not st.ok


def node_delta1(inputs: Tup, state: Value, rmax_squared: int) -> Value:
    if state == FAILED or _failing(inputs):
        return FAILED
    return NodeSt(state.id, state.x, state.y, routing_update(inputs, state, rmax_squared))


def node_delta2(inputs: Tup, state: Value) -> Tup:
    if state == FAILED or _failing(inputs):
        return tup(NOMSG)
    return tup(Msg(state.id, state.x, state.y))


@register("lmst-node")
def lmst_node(n_inputs: int = 5, rmax_squared: int = DEFAULT_RMAX_SQUARED) -> MachineDef:
    """Node with ``n_inputs - 1`` hello lines and a trailing status line."""
    if n_inputs < 2:
        raise ValueError("an LMST node needs at least one hello line and a status line")
    sig = MachineSignature((MSG_PLUS,) * (n_inputs - 1) + (STATUS,), NODE_STATE, (MSG_PLUS,))
    return MachineDef(
        "lmst-node",
        sig,
        lambda i, s: node_delta1(i, s, rmax_squared),
        node_delta2,
    )


# ---------------------------------------------------------------------------
# propositions and formulas


def live_nodes(s: ComposedState) -> list[int]:
    return [j for j, st in enumerate(s.machine_states, 1) if st != FAILED]


def connected_prop(s: ComposedState) -> bool:
    """Routing edges among live nodes form a strongly connected digraph."""
    live = live_nodes(s)
    if len(live) <= 1:
        return True
    alive = set(live)
    fwd = {j: [r for r in s.machine_states[j - 1].routing if r in alive] for j in live}
    bwd: dict[int, list[int]] = {j: [] for j in live}
    for j, rs in fwd.items():
        for r in rs:
            bwd[r].append(j)

    def reach(adj):
        seen, todo = {live[0]}, [live[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    return len(reach(fwd)) == len(live) and len(reach(bwd)) == len(live)


def failed_prop(i: int, s: ComposedState) -> bool:
    return s.machine_states[i - 1] == FAILED


def propositions(n: int) -> tuple[Proposition, ...]:
    props = [Proposition(f"failed?({i})", lambda s, i=i: failed_prop(i, s)) for i in range(1, n + 1)]
    props.append(Proposition("connected?", connected_prop))
    return tuple(props)


def correctness_formulas(n: int) -> dict[str, str]:
    """Named formula table; names may reference each other."""
    if n < 2:
        raise ValueError("need at least two nodes")
    nnf = " & ".join(f"(failed?({i}) <-> X failed?({i}))" for i in range(1, n + 1))
    return {
        "no-new-failures?": nnf,
        "correct?": "X (G (no-new-failures? -> X connected?))",
        "correct-literal?": "X ((G no-new-failures?) -> X connected?)",
        "always-connected?": "X G connected?",
    }


# ---------------------------------------------------------------------------
# scenario


@dataclass(frozen=True)
class LmstScenario:
    positions: tuple[tuple[int, int, int], ...]
    rmax_squared: int
    spec: EnsembleSpec
    init: ComposedState
    env_inputs: tuple[Tup, ...]
    formulas: Mapping[str, str]
    props: tuple[Proposition, ...]

    @property
    def n(self) -> int:
        return len(self.positions)

    def coordinates(self) -> dict[int, tuple[int, int]]:
        return {i: (x, y) for i, x, y in self.positions}


def build_scenario(
    positions: Sequence[Sequence[int]] = DEFAULT_POSITIONS, rmax_squared: int = DEFAULT_RMAX_SQUARED
) -> LmstScenario:
    """All-to-all network of LMST nodes at ``positions`` (``(id, x, y)`` triples).

    Node j's first N-1 inputs read the other nodes' hellos in ascending id
    order, its last input reads environment output j.  The environment's
    single input is fed by node 1 and ignored.  Initially every node is
    live with an empty routing table and no hello has been latched.
    """
    pos = tuple(tuple(int(c) for c in p) for p in positions)
    n = len(pos)
    if n < 2:
        raise ValueError("an LMST scenario needs at least two nodes")
    if any(len(p) != 3 for p in pos):
        raise ValueError("positions are (id, x, y) triples")
    if [p[0] for p in pos] != list(range(1, n + 1)):
        raise ValueError("node ids must be 1..N in order")
    if any(x < 0 or y < 0 for _, x, y in pos):
        raise ValueError("coordinates must be naturals")
    if rmax_squared < 0:
        raise ValueError("rmax_squared must be a natural")

    node = lmst_node(n, rmax_squared)
    wiring = {}
    for j in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != j]
        for slot, k in enumerate(others, 1):
            wiring[Port(j, slot)] = Port(k, 1)
        wiring[Port(j, n)] = Port(ENV, j)
    wiring[Port(ENV, 1)] = Port(1, 1)
    env = EnvSignature((MSG_PLUS,), (STATUS,) * n)
    spec = EnsembleSpec((node,) * n, env, wiring)
    init = ComposedState(tuple(NodeSt(i, x, y, ()) for i, x, y in pos), (NOMSG,) * n)
    return LmstScenario(
        pos,
        rmax_squared,
        spec,
        init,
        enumerate_env_inputs(n),
        MappingProxyType(correctness_formulas(n)),
        propositions(n),
    )
