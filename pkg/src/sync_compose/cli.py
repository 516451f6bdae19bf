"""``sync-compose`` command line: compose, simulate and check spec files.

Exit codes: 0 success / property holds, 1 property violated, 2 error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .kripke import DEFAULT_MAX_STATES, StateBudgetExceeded, build_state_graph
from .ltl import MacroError, UnknownProposition, model_check, replay_lasso
from .ltl.formula import expand
from .specfile import SpecFileError, decode_env_tuple, load_spec
from .wiring import InvalidSpec, validate

log = logging.getLogger("sync_compose")

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2


def _fmt_sorts(sorts):
    return "(" + ", ".join(map(str, sorts)) + ")"


def cmd_compose(path, out=None) -> int:
    out = out or sys.stdout
    try:
        b = load_spec(path)
    except InvalidSpec as exc:
        print("validation: FAILED", file=out)
        for e in exc.report.errors:
            print(f"  error: {e}", file=out)
        return EXIT_ERROR
    report = validate(b.spec)
    cm = b.machine
    print("validation: ok", file=out)
    for w in report.warnings:
        print(f"  warning: {w}", file=out)
    print(f"machines: {len(b.spec.machines)}", file=out)
    for j, m in enumerate(b.spec.machines, 1):
        sig = m.signature
        print(f"  M{j}: {m.name} {sig.n_inputs}->{sig.n_outputs} state {sig.state_sort}", file=out)
    print("internal nodes: " + (", ".join(map(str, cm.nodes)) or "none"), file=out)
    print(f"state layout (arity {len(cm.layout)}):", file=out)
    for j, srt in enumerate(cm.layout.machine_state_sorts, 1):
        print(f"  S{j}: {srt}", file=out)
    for q, srt in cm.layout.latched:
        print(f"  latch {q}: {srt}", file=out)
    print(
        f"composed signature: inputs {_fmt_sorts(cm.input_sorts)} -> outputs {_fmt_sorts(cm.output_sorts)}",
        file=out,
    )
    return EXIT_OK


def cmd_simulate(path, inputs_path, steps: int, out=None) -> int:
    out = out or sys.stdout
    b = load_spec(path)
    cm = b.machine
    raw = json.loads(Path(inputs_path).read_text())
    if not isinstance(raw, list) or len(raw) < steps:
        raise SpecFileError(f"need at least {steps} input tuples", str(inputs_path))
    s = b.init
    print(f"step 0: state {s}", file=out)
    for i in range(steps):
        x = decode_env_tuple(raw[i], cm.input_sorts, f"{inputs_path}[{i}]")
        s, y = cm.step(x, s)
        print(f"step {i + 1}: input {x} state {s} output {y}", file=out)
    return EXIT_OK


def cmd_check(path, formula_name: str, max_states: int = DEFAULT_MAX_STATES, dump_graph=None, out=None) -> int:
    out = out or sys.stdout
    b = load_spec(path)
    if formula_name not in b.formulas:
        raise SpecFileError(f"unknown formula {formula_name!r}; known: {', '.join(sorted(b.formulas))}")
    formula = expand(b.formulas[formula_name], b.formulas)
    k = build_state_graph(b.machine, b.env_inputs, b.init, b.props, max_states)
    if dump_graph:
        Path(dump_graph).write_text(k.dump())
    verdict = model_check(k, formula)
    log.info("model checking took %.3f s", verdict.seconds)
    print(f"formula {formula_name}: {b.formula_texts[formula_name]}", file=out)
    print(f"kripke states: {len(k)}  transitions: {k.n_edges}", file=out)
    print(f"automaton states: {verdict.automaton_states}  product states: {verdict.product_states}", file=out)
    if verdict.holds:
        print("verdict: HOLDS", file=out)
        return EXIT_OK
    lasso = verdict.counterexample
    if not replay_lasso(k, lasso, formula):
        raise RuntimeError("internal error: counterexample failed certification")
    print("verdict: VIOLATED", file=out)
    print("counterexample (certified):", file=out)
    print(lasso.format(k), file=out)
    return EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sync-compose", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compose", help="validate a spec and show the composed structure")
    c.add_argument("spec")

    s = sub.add_parser("simulate", help="replay environment inputs through the composed machine")
    s.add_argument("spec")
    s.add_argument("--inputs", required=True, help="JSON list of environment output tuples")
    s.add_argument("--steps", type=int, required=True)

    k = sub.add_parser("check", help="model check a named LTL formula")
    k.add_argument("spec")
    k.add_argument("--formula", required=True)
    k.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    k.add_argument("--dump-graph", metavar="FILE")
    return p


def main(argv=None) -> int:
    level = os.environ.get("SYNC_COMPOSE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compose":
            return cmd_compose(args.spec)
        if args.command == "simulate":
            if args.steps < 0:
                raise SpecFileError("--steps must be >= 0")
            return cmd_simulate(args.spec, args.inputs, args.steps)
        return cmd_check(args.spec, args.formula, args.max_states, args.dump_graph)
    except InvalidSpec as exc:
        print(str(exc), file=sys.stderr)
    except (SpecFileError, StateBudgetExceeded, UnknownProposition, MacroError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except json.JSONDecodeError as exc:
        print(f"error: line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
