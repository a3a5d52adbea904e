"""Executable rewriting theories over built-in types, with a checkable semantics."""

from .frontend import compile_source
from .interpreter import RunResult, Stepped, run, step, try_match
from .semantics import RewritingRule, RewritingTheory, SideCondition, step_related, trace_related
from .static_model import StaticModel, default_model
from .syntax import parse_eterm, parse_expression, parse_ground_term, parse_term, print_term
from .terms import Call, Leaf, Lit, Node, Term, Variable

__all__ = [
    "Call", "Leaf", "Lit", "Node", "RewritingRule", "RewritingTheory", "RunResult", "SideCondition",
    "StaticModel", "Stepped", "Term", "Variable", "compile_source", "default_model", "parse_eterm",
    "parse_expression", "parse_ground_term", "parse_term", "print_term", "run", "step", "step_related",
    "trace_related", "try_match",
]
__version__ = "0.1.0"
