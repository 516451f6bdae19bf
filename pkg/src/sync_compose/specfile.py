"""JSON composition spec files.

A spec file describes machines, the environment signature, the wiring
diagram, an initial composed state, the environment input set and a table
of named LTL formulas::

    {
      "machines": [{"kind": "xor2"}, {"kind": "xor2"}, {"kind": "and2"}],
      "environment": {"inputs": 1, "outputs": 4, "outputSorts": ["boolean", ...]},
      "wiring": {"(1,1)": "(e,1)", ..., "(e,1)": "(3,1)"},
      "initial": {"machines": ["*", "*", "*"], "latched": {"(1,1)": false, "(2,1)": false}},
      "envInputs": "bool-enum",
      "formulas": {"true": "true"}
    }

An LMST network is described by a ``scenario`` block instead of machines,
environment, wiring and initial state.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from . import lmst
from .compose import ComposedMachine, ComposedState
from .core import (
    ENV,
    FAIL,
    FAILED,
    NOMSG,
    OK,
    STAR,
    UNIT,
    Bool,
    EnvSignature,
    IdList,
    Msg,
    Nat,
    NodeSt,
    Port,
    Sort,
    Tup,
    Value,
    make_machine,
    parse_port,
    parse_sort,
)
from .kripke import Proposition, boolean_props, enumerate_bool_inputs, enumerate_env_inputs, env_input_set
from .ltl import Formula, LTLSyntaxError, parse_formula
from .wiring import EnsembleSpec, InvalidSpec, validate


class SpecFileError(ValueError):
    """Malformed spec file; ``where`` locates the problem (line/column or JSON path)."""

    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


@dataclass(frozen=True)
class SpecBundle:
    spec: EnsembleSpec
    machine: ComposedMachine
    init: ComposedState
    env_inputs: tuple[Tup, ...]
    formula_texts: Mapping[str, str]
    formulas: Mapping[str, Formula]
    props: tuple[Proposition, ...]
    scenario: lmst.LmstScenario | None = None


def decode_value(obj: Any, sort: Sort, where: str = "") -> Value:
    """Sort-directed decoding of a JSON literal."""
    kind = sort.kind
    try:
        if kind == "optional":
            if obj == "nomsg":
                return NOMSG
            return decode_value(obj, sort.params[0], where)
        if kind == "unit" and obj in ("*", "star", None):
            return STAR
        if kind == "boolean" and isinstance(obj, bool):
            return Bool(obj)
        if kind == "natural" and isinstance(obj, int) and not isinstance(obj, bool):
            return Nat(obj)
        if kind == "status" and obj in ("ok", "fail"):
            return OK if obj == "ok" else FAIL
        if kind == "message" and isinstance(obj, list) and len(obj) == 3:
            return Msg(*map(int, obj))
        if kind == "idList" and isinstance(obj, list):
            return IdList(tuple(map(int, obj)))
        if kind == "tuple" and isinstance(obj, list) and len(obj) == len(sort.params):
            return Tup(tuple(decode_value(o, s, f"{where}[{i}]") for i, (o, s) in enumerate(zip(obj, sort.params))))
        if kind == "nodeState":
            if obj == "failed":
                return FAILED
            if isinstance(obj, dict):
                return NodeSt(int(obj["id"]), int(obj["x"]), int(obj["y"]), tuple(map(int, obj.get("routing", ()))))
    except (ValueError, TypeError, KeyError) as exc:
        raise SpecFileError(f"bad {sort} literal {obj!r}: {exc}", where) from None
    raise SpecFileError(f"expected a {sort} literal, got {obj!r}", where)


def decode_env_tuple(obj: Any, sorts, where: str = "") -> Tup:
    if not isinstance(obj, list) or len(obj) != len(sorts):
        raise SpecFileError(f"expected a list of {len(sorts)} values, got {obj!r}", where)
    return Tup(tuple(decode_value(o, s, f"{where}[{i}]") for i, (o, s) in enumerate(zip(obj, sorts))))


def _port(text, where):
    try:
        return parse_port(text)
    except ValueError as exc:
        raise SpecFileError(str(exc), where) from None


def _sort(text, where):
    try:
        return parse_sort(text)
    except ValueError as exc:
        raise SpecFileError(str(exc), where) from None


def _env_inputs(obj, env: EnvSignature):
    where = "envInputs"
    if obj == "status-enum" or obj == "bool-enum":
        want = "status" if obj == "status-enum" else "boolean"
        if any(s.kind != want for s in env.output_sorts):
            raise SpecFileError(f"{obj} needs every environment output to be {want}", where)
        gen = enumerate_env_inputs if want == "status" else enumerate_bool_inputs
        return gen(env.n_outputs)
    if isinstance(obj, list) and obj:
        return env_input_set(decode_env_tuple(o, env.output_sorts, f"{where}[{i}]") for i, o in enumerate(obj))
    raise SpecFileError("expected 'status-enum', 'bool-enum' or a non-empty list", where)


def _formulas(texts: Mapping[str, str]) -> dict[str, Formula]:
    out = {}
    for name, text in texts.items():
        if not isinstance(text, str):
            raise SpecFileError("formula must be a string", f"formulas[{name!r}]")
        try:
            out[name] = parse_formula(text)
        except LTLSyntaxError as exc:
            raise SpecFileError(str(exc), f"formulas[{name!r}]") from None
    return out


def parse_spec(doc: Mapping[str, Any]) -> SpecBundle:
    if not isinstance(doc, dict):
        raise SpecFileError("spec file must contain a JSON object")
    if "scenario" in doc:
        return _parse_scenario(doc)

    for key in ("machines", "environment", "wiring", "initial"):
        if key not in doc:
            raise SpecFileError(f"missing key {key!r}")
    machines = []
    for i, m in enumerate(doc["machines"], 1):
        where = f"machines[{i - 1}]"
        if not isinstance(m, dict) or "kind" not in m:
            raise SpecFileError("machine entries need a 'kind'", where)
        try:
            machines.append(make_machine(m["kind"], **m.get("params", {})))
        except KeyError as exc:
            raise SpecFileError(str(exc.args[0]), where) from None
        except (TypeError, ValueError) as exc:
            raise SpecFileError(str(exc), where) from None

    wiring = {}
    raw_wiring = doc["wiring"]
    if not isinstance(raw_wiring, dict):
        raise SpecFileError("wiring must be an object", "wiring")
    for k, v in raw_wiring.items():
        wiring[_port(k, f"wiring[{k!r}]")] = _port(v, f"wiring[{k!r}]")

    env_doc = doc["environment"]
    out_sorts = tuple(_sort(s, "environment.outputSorts") for s in env_doc.get("outputSorts", []))
    n_out = env_doc.get("outputs", len(out_sorts))
    if len(out_sorts) != n_out:
        raise SpecFileError("outputSorts must list one sort per environment output", "environment")
    n_in = env_doc.get("inputs", len(env_doc.get("inputSorts", [])))
    if "inputSorts" in env_doc:
        in_sorts = tuple(_sort(s, "environment.inputSorts") for s in env_doc["inputSorts"])
        if len(in_sorts) != n_in:
            raise SpecFileError("inputSorts must list one sort per environment input", "environment")
    else:
        in_sorts = tuple(_inferred_sort(wiring.get(Port(ENV, k)), machines, out_sorts) for k in range(1, n_in + 1))
    try:
        env = EnvSignature(in_sorts, out_sorts)
        spec = EnsembleSpec(tuple(machines), env, wiring)
    except ValueError as exc:
        raise SpecFileError(str(exc), "environment") from None
    report = validate(spec)
    if not report.ok:
        raise InvalidSpec(report)
    cm = ComposedMachine(spec)

    init_doc = doc["initial"]
    if not isinstance(init_doc, dict):
        raise SpecFileError("initial must be an object", "initial")
    m_states = init_doc.get("machines", [])
    if not isinstance(m_states, list) or len(m_states) != len(machines):
        raise SpecFileError(f"expected {len(machines)} machine states", "initial.machines")
    states = tuple(
        decode_value(v, m.signature.state_sort, f"initial.machines[{i}]")
        for i, (v, m) in enumerate(zip(m_states, machines))
    )
    latched_doc = {_port(k, f"initial.latched[{k!r}]"): v for k, v in init_doc.get("latched", {}).items()}
    extra = set(latched_doc) - set(cm.nodes)
    if extra:
        raise SpecFileError(f"{sorted(map(str, extra))} are not internal nodes", "initial.latched")
    latched = []
    for q, srt in cm.layout.latched:
        if q not in latched_doc:
            raise SpecFileError(f"no initial value for internal node {q}", "initial.latched")
        latched.append(decode_value(latched_doc[q], srt, f"initial.latched[{str(q)!r}]"))
    init = ComposedState(states, tuple(latched))

    env_inputs = _env_inputs(doc.get("envInputs", "bool-enum"), env)
    texts = dict(doc.get("formulas", {}))
    return SpecBundle(spec, cm, init, env_inputs, texts, _formulas(texts), boolean_props(cm))


def _inferred_sort(src: Port | None, machines, env_out) -> Sort:
    # only used when inputSorts is omitted; a bad source is reported by validate()
    if src is None:
        return UNIT
    if src.is_env:
        return env_out[src.slot - 1] if 1 <= src.slot <= len(env_out) else UNIT
    if 1 <= src.owner <= len(machines):
        outs = machines[src.owner - 1].signature.output_sorts
        if 1 <= src.slot <= len(outs):
            return outs[src.slot - 1]
    return UNIT


def _parse_scenario(doc) -> SpecBundle:
    for key in ("machines", "environment", "wiring"):
        if key in doc:
            raise SpecFileError(f"{key!r} is generated from the scenario block and must be omitted")
    sc_doc = doc["scenario"]
    if not isinstance(sc_doc, dict):
        raise SpecFileError("scenario must be an object", "scenario")
    try:
        scenario = lmst.build_scenario(
            sc_doc.get("positions", lmst.DEFAULT_POSITIONS),
            sc_doc.get("rmaxSquared", lmst.DEFAULT_RMAX_SQUARED),
        )
    except (TypeError, ValueError) as exc:
        raise SpecFileError(str(exc), "scenario") from None
    if doc.get("initial", "scenario") != "scenario":
        raise SpecFileError("scenario files use the scenario's initial state", "initial")
    env_inputs = (
        _env_inputs(doc["envInputs"], scenario.spec.env) if "envInputs" in doc else scenario.env_inputs
    )
    texts = dict(scenario.formulas)
    texts.update(doc.get("formulas", {}))
    return SpecBundle(
        scenario.spec,
        ComposedMachine(scenario.spec),
        scenario.init,
        env_inputs,
        texts,
        _formulas(texts),
        scenario.props,
        scenario,
    )


def load_spec(path) -> SpecBundle:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return parse_spec(doc)
