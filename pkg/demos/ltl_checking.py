"""Model checking small hand-made Kripke structures and reading the lassos."""
from sync_compose.kripke import from_graph
from sync_compose.ltl import model_check, parse_formula, to_buchi, to_nnf, Not

# 0 -> 1 -> 2 -> 1, with a side loop on 0
k = from_graph([[0, 1], [2], [1]], [{"req"}, {"busy"}, {"ack"}])

for text in ["G F ack", "req U busy", "G (busy -> X ack)", "G (ack -> X busy)", "F G !req | G req"]:
    f = parse_formula(text)
    v = model_check(k, f)
    verdict = "holds" if v.holds else "violated, " + v.counterexample.format()
    print(f"{text:22} {verdict}")

# size of the automaton for the negation, which is what the search runs against
f = parse_formula("G (req -> F ack)")
print("automaton states for !(G (req -> F ack)):", to_buchi(to_nnf(Not(f))).n_states)
