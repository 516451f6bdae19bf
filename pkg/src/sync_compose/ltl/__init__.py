from .buchi import BuchiAutomaton, Guard, to_buchi
from .check import Lasso, UnknownProposition, Verdict, model_check, replay_lasso
from .formula import (
    FALSE,
    TRUE,
    Always,
    And,
    Eventually,
    FalseF,
    Formula,
    Iff,
    Implies,
    MacroError,
    Next,
    Not,
    Or,
    Prop,
    Release,
    TrueF,
    Until,
    depth,
    expand,
    is_nnf,
    props,
    to_nnf,
)
from .oracle import bounded_lassos, eval_on_lasso, violated_by_enumeration
from .parser import LTLSyntaxError, parse_formula

__all__ = [
    "Always", "And", "BuchiAutomaton", "Eventually", "FALSE", "FalseF", "Formula", "Guard",
    "Iff", "Implies", "LTLSyntaxError", "Lasso", "MacroError", "Next", "Not", "Or", "Prop",
    "Release", "TRUE", "TrueF", "UnknownProposition", "Until", "Verdict", "depth",
    "eval_on_lasso", "expand", "is_nnf", "model_check", "parse_formula", "props",
    "replay_lasso", "bounded_lassos", "violated_by_enumeration", "to_buchi", "to_nnf",
]
