"""Two xor gates feeding an and gate, composed into one machine and stepped by hand."""
from sync_compose import compose
from sync_compose.compose import ComposedState
from sync_compose.core import BOOLEAN, ENV, STAR, Bool, EnvSignature, Port, Tup, make_machine
from sync_compose.wiring import EnsembleSpec, internal_nodes

B = lambda *bs: Tup(tuple(Bool(b) for b in bs))  # noqa: E731

xor, and_ = make_machine("xor2"), make_machine("and2")
wiring = {
    Port(1, 1): Port(ENV, 1), Port(1, 2): Port(ENV, 2),
    Port(2, 1): Port(ENV, 3), Port(2, 2): Port(ENV, 4),
    Port(3, 1): Port(1, 1), Port(3, 2): Port(2, 1),
    Port(ENV, 1): Port(3, 1),
}
spec = EnsembleSpec((xor, xor, and_), EnvSignature((BOOLEAN,), (BOOLEAN,) * 4), wiring)

# the two xor outputs feed the and gate, so they are latched for one round
print("internal nodes:", [str(q) for q in internal_nodes(spec)])

cm = compose(spec, check=True)
s = ComposedState((STAR,) * 3, (Bool(False), Bool(False)))
for x in [B(True, False, True, True), B(False, False, False, False), B(True, False, False, True), B(False, False, False, False)]:
    s, y = cm.step(x, s)
    print(f"in {x}  latched {Tup(s.latched)}  out {y}")

# the and gate only sees the xor results one round later
