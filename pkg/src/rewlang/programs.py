"""Helpers for preparing program terms: argument placeholders, init wrapping, unary numerals."""

from __future__ import annotations

import re
from typing import Sequence

from .frontend import INIT_LABEL, INIT_SYMBOL
from .semantics import RewritingTheory
from .syntax import parse_ground_term
from .terms import Leaf, Node, Term

_ARG_RE = re.compile(r"\$arg([1-9][0-9]*)?")


class MissingArgumentError(ValueError):
    pass


def placeholder_index(symbol: str) -> int | None:
    """0-based argument index for ``$arg``/``$argN`` symbols, else None."""
    m = _ARG_RE.fullmatch(symbol)
    if m is None:
        return None
    return int(m.group(1)) - 1 if m.group(1) else 0


def substitute_args(program: Term, args: Sequence[Term]) -> Term:
    """Replace nullary ``$arg``/``$argN`` nodes by the corresponding argument term."""
    if type(program) is Leaf:
        return program
    idx = placeholder_index(program.symbol)
    if idx is not None and not program.children:
        if idx >= len(args):
            raise MissingArgumentError(f"program uses {program.symbol} but only {len(args)} argument(s) given")
        return args[idx]
    new = [substitute_args(c, args) for c in program.children]
    if all(a is b for a, b in zip(new, program.children)):
        return program
    return Node(program.symbol, new)


def has_init_rule(theory: RewritingTheory) -> bool:
    return any(r.action == INIT_LABEL for r in theory.rules)


def initial_configuration(theory: RewritingTheory, program: Term) -> Term:
    if has_init_rule(theory):
        return Node(INIT_SYMBOL, (program,))
    return program


def parse_argument(text: str) -> Term:
    """A ``--arg`` value: a ground term literal, or a bare integer as shorthand."""
    stripped = text.strip()
    if re.fullmatch(r"-?[0-9]+", stripped):
        return Leaf(int(stripped))
    return parse_ground_term(stripped)


ZERO = Node("zero", ())


def unary(n: int) -> Term:
    t = ZERO
    for _ in range(n):
        t = Node("succ", (t,))
    return t


def from_unary(t: Term) -> int | None:
    n = 0
    while type(t) is Node and t.symbol == "succ" and len(t.children) == 1:
        t = t.children[0]
        n += 1
    if t == ZERO:
        return n
    return None
