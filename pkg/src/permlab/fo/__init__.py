"""First-order sentence language over finite permutation groups."""

from ..errors import ParseError
from .evaluate import (NAIVE_CAP, STRATEGIES, EvalResult, eval_term, evaluate,
                       evaluate_detailed, validate_formula)
from .macros import MACROS, SET_FUNCTIONS, ArgKind
from .parser import parse_formula, parse_term
from .syntax import (And, Comm, Eq, Implies, Int, Inv, MacroCall, Mul, Not,
                     One, Or, Quant, SetCall, Var, free_variables, term_text,
                     to_text)

__all__ = [
    "ParseError", "parse_formula", "parse_term", "to_text", "term_text",
    "free_variables", "validate_formula",
    "evaluate", "evaluate_detailed", "EvalResult", "eval_term",
    "NAIVE_CAP", "STRATEGIES", "ArgKind", "MACROS", "SET_FUNCTIONS",
    "Var", "One", "Mul", "Inv", "Comm", "Int", "SetCall",
    "Eq", "MacroCall", "Not", "And", "Or", "Implies", "Quant",
]
