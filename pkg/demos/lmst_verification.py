"""Five LMST nodes under arbitrary crash failures: build the state space, check two properties."""
import time

from sync_compose import compose
from sync_compose.core import OK, Tup
from sync_compose.kripke import build_state_graph
from sync_compose.lmst import build_scenario, connected_prop, tx_power_squared
from sync_compose.ltl import expand, model_check, parse_formula, replay_lasso

sc = build_scenario()
cm = compose(sc.spec)

# two quiet rounds: hellos get latched, then every node computes its local tree
s = sc.init
for _ in range(2):
    s, _ = cm.step(Tup((OK,) * sc.n), s)
for node in s.machine_states:
    print(f"node {node.id}: routing {list(node.routing)}, tx power^2 {tx_power_squared(node, sc.coordinates())}")
print("connected:", connected_prop(s))

t0 = time.perf_counter()
k = build_state_graph(cm, sc.env_inputs, sc.init, sc.props)
print(f"{len(k)} reachable states, {k.n_edges} transitions ({time.perf_counter() - t0:.2f}s)")

macros = {name: parse_formula(text) for name, text in sc.formulas.items()}
for name in ("correct?", "correct-literal?", "always-connected?"):
    f = expand(macros[name], macros)
    v = model_check(k, f)
    print(f"{name:18} {'holds' if v.holds else 'violated'}")
    if not v.holds:
        print("  ", v.counterexample.format(), "certified:", replay_lasso(k, v.counterexample, f))

# always-connected? fails right after the first round: nobody has heard a hello yet
