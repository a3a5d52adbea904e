"""Universal one-step interpreter: first-match rule selection over a theory.

Rules are tried in theory order with a plain linear scan; the first rule whose
left side matches and whose side conditions evaluate to true fires.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .semantics import RewritingRule, RewritingTheory, SideCondition
from .static_model import StaticModel
from .terms import Leaf, Lit, Node, Term, Variable


class InterpreterInvariantError(RuntimeError):
    """A matched rule's right side mentioned a variable the match did not bind."""


class Stepped(NamedTuple):
    next: Term
    rule_index: int
    action: str
    valuation: dict


@dataclass
class RunResult:
    final: Term
    steps_taken: int
    action_word: list[str]
    exhausted: bool
    fire_counts: list[int]
    rule_indices: list[int] = field(default_factory=list)
    terms: list[Term] | None = None

    @property
    def intermediates(self) -> list[Term]:
        if self.terms is None:
            raise ValueError("run was not recorded; pass record_trace=True")
        return self.terms[1:-1]


# -- matching ----------------------------------------------------------------

def _match(phi: Term, g: Term, rho: dict) -> bool:
    if type(phi) is Leaf:
        v = phi.value
        if type(v) is Variable:
            bound = rho.get(v)
            if bound is None:
                rho[v] = g
                return True
            return bound == g
        return type(g) is Leaf and type(g.value) is type(v) and g.value == v
    if type(g) is not Node or phi.symbol != g.symbol:
        return False
    pc = phi.children
    gc = g.children
    if len(pc) != len(gc):
        return False
    for p, t in zip(pc, gc):
        if not _match(p, t, rho):
            return False
    return True


def try_match(phi: Term, g: Term) -> dict | None:
    """Match pattern ``phi`` against ground term ``g``.

    Returns the valuation binding exactly the variables of ``phi``, or None.
    """
    rho: dict = {}
    return rho if _match(phi, g, rho) else None


# -- evaluation --------------------------------------------------------------

def _denote(functions, rho: dict, e) -> Term | None:
    tp = type(e)
    if tp is Variable:
        return rho.get(e)
    if tp is Lit:
        return e.term
    args = []
    for a in e.args:
        v = _denote(functions, rho, a)
        if v is None:
            return None
        args.append(v)
    return functions[e.function].impl(*args)


def evaluate_condition(model: StaticModel, rho: dict, cs: Sequence[SideCondition]) -> bool:
    functions = model.functions
    for lhs, rhs in cs:
        left = _denote(functions, rho, lhs)
        if left is None:
            continue
        right = _denote(functions, rho, rhs)
        if right is not None and left != right:
            return False
    return True


def _evaluate(functions, rho: dict, r: Term) -> Term | None:
    if type(r) is Leaf:
        return _denote(functions, rho, r.value)
    children = []
    for c in r.children:
        v = _evaluate(functions, rho, c)
        if v is None:
            return None
        children.append(v)
    return Node(r.symbol, children)


def evaluate(model: StaticModel, rho: dict, r: Term) -> Term | None:
    """Ground instance of expression term ``r`` under ``rho``; None if a variable is unbound."""
    return _evaluate(model.functions, rho, r)


# -- selection and stepping --------------------------------------------------

def naive_select(
    model: StaticModel, theory: RewritingTheory, g: Term
) -> tuple[int, RewritingRule, dict] | None:
    for i, rule in enumerate(theory.rules):
        rho = try_match(rule.lhs, g)
        if rho is not None and evaluate_condition(model, rho, rule.conditions):
            return i, rule, rho
    return None


def step(model: StaticModel, theory: RewritingTheory, g: Term) -> Stepped | None:
    """One rewriting step from ``g``, or None when ``g`` is stuck."""
    selected = naive_select(model, theory, g)
    if selected is None:
        return None
    i, rule, rho = selected
    nxt = _evaluate(model.functions, rho, rule.rhs)
    if nxt is None:
        raise InterpreterInvariantError(
            f"rule {i} ({rule.action}) produced an undefined right-hand side; "
            "the theory is not well-formed"
        )
    return Stepped(nxt, i, rule.action, rho)


def run(
    model: StaticModel,
    theory: RewritingTheory,
    g0: Term,
    fuel: int,
    record_trace: bool = False,
) -> RunResult:
    """Step from ``g0`` until stuck or until ``fuel`` steps have been taken."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    counts = [0] * len(theory.rules)
    word: list[str] = []
    indices: list[int] = []
    terms = [g0] if record_trace else None
    g = g0
    taken = 0
    while taken < fuel:
        out = step(model, theory, g)
        if out is None:
            return RunResult(g, taken, word, False, counts, indices, terms)
        g = out.next
        counts[out.rule_index] += 1
        word.append(out.action)
        indices.append(out.rule_index)
        if terms is not None:
            terms.append(g)
        taken += 1
    exhausted = naive_select(model, theory, g) is not None
    return RunResult(g, taken, word, exhausted, counts, indices, terms)
