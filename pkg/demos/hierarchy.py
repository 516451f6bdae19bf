"""A composed machine is itself a machine: put the xor/and circuit behind a register."""
from importlib import resources

from sync_compose import compose
from sync_compose.compose import ComposedState
from sync_compose.core import BOOLEAN, ENV, Bool, EnvSignature, Port, Tup, make_machine
from sync_compose.specfile import load_spec
from sync_compose.wiring import EnsembleSpec

circuit = load_spec(resources.files("sync_compose") / "specs" / "circuit.json")
inner = circuit.machine.as_machine_def("circuit")
sig = inner.signature
print(f"inner machine: {sig.n_inputs} inputs, {sig.n_outputs} output, state sort {sig.state_sort}")

dff = make_machine("dff")
wiring = {Port(1, k): Port(ENV, k) for k in range(1, 5)}
wiring[Port(2, 1)] = Port(1, 1)
wiring[Port(ENV, 1)] = Port(2, 1)
outer = compose(EnsembleSpec((inner, dff), EnvSignature((BOOLEAN,), (BOOLEAN,) * 4), wiring), check=True)

s = ComposedState((circuit.init.as_value(), Bool(False)), (Bool(False),))
inputs = [(True, False, False, True)] + [(False,) * 4] * 3
for bits in inputs:
    s, y = outer.step(Tup(tuple(map(Bool, bits))), s)
    print(bits, "->", y)

# xor, and, the outer latch and the register each cost one round
