"""Declarative semantics of rewriting theories, written as an executable checker.

Nothing in this module is shared with :mod:`rewlang.interpreter`; the two are
meant to be cross-checked against each other. Relations are decided directly
from their inductive definitions, and the matching valuation used by
:func:`step_related` comes from a constraint-collection pass rather than a
recursive matcher.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .static_model import StaticModel, apply
from .terms import Expression, Leaf, Lit, Node, Term, Variable, free_vars

Valuation = Mapping[Variable, Term]

#: Diagnostic counters; ``vacuous_side_condition`` counts side conditions that
#: held only because one side had no denotation.
oracle_stats: Counter[str] = Counter()


class SideCondition(NamedTuple):
    lhs: Expression
    rhs: Expression


@dataclass(frozen=True)
class RewritingRule:
    lhs: Term
    rhs: Term
    conditions: tuple[SideCondition, ...] = ()
    action: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "conditions", tuple(SideCondition(*c) for c in self.conditions))


@dataclass(frozen=True)
class RewritingTheory:
    rules: tuple[RewritingRule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    @property
    def actions(self) -> list[str]:
        return [r.action for r in self.rules]


@dataclass(frozen=True)
class Witness:
    rule_index: int
    rule: RewritingRule
    valuation: dict[Variable, Term] = field(compare=False)


# -- expressions -------------------------------------------------------------

def denote_expr(model: StaticModel, rho: Valuation, e: Expression) -> Term | None:
    """The unique ground term ``e`` denotes under ``rho``; None if a variable is unbound."""
    tp = type(e)
    if tp is Lit:
        return e.term
    if tp is Variable:
        return rho.get(e)
    args = []
    for a in e.args:
        g = denote_expr(model, rho, a)
        if g is None:
            return None
        args.append(g)
    return apply(model, e.function, args)


def sat_expr(model: StaticModel, rho: Valuation, g: Term, e: Expression) -> bool:
    tp = type(e)
    if tp is Lit:
        return e.term == g
    if tp is Variable:
        bound = rho.get(e)
        return bound is not None and bound == g
    # call clause: the argument witnesses are forced, since each argument
    # denotes at most one ground term
    witnesses = []
    for a in e.args:
        w = denote_expr(model, rho, a)
        if w is None or not sat_expr(model, rho, w, a):
            return False
        witnesses.append(w)
    return apply(model, e.function, witnesses) == g


# -- symbolic and expression terms -------------------------------------------

def _sat_leaf_sym(rho: Valuation, g: Term, v: object) -> bool:
    if type(v) is Variable:
        bound = rho.get(v)
        return bound is not None and bound == g
    return type(g) is Leaf and type(g.value) is type(v) and g.value == v


def sat_sym(model: StaticModel | None, rho: Valuation, g: Term, phi: Term) -> bool:
    """``rho, g |= phi`` for a symbolic term ``phi``."""
    if type(phi) is Leaf:
        return _sat_leaf_sym(rho, g, phi.value)
    if type(g) is not Node or g.symbol != phi.symbol or len(g.children) != len(phi.children):
        return False
    return all(sat_sym(model, rho, gi, ti) for gi, ti in zip(g.children, phi.children))


def sat_exprterm(model: StaticModel, rho: Valuation, g: Term, t: Term) -> bool:
    """``rho, g |= t`` for an expression term ``t``."""
    if type(t) is Leaf:
        return sat_expr(model, rho, g, t.value)
    if type(g) is not Node or g.symbol != t.symbol or len(g.children) != len(t.children):
        return False
    return all(sat_exprterm(model, rho, gi, ti) for gi, ti in zip(g.children, t.children))


def side_condition_holds(model: StaticModel, rho: Valuation, c: SideCondition) -> bool:
    left = denote_expr(model, rho, c.lhs)
    right = denote_expr(model, rho, c.rhs)
    if left is None or right is None:
        oracle_stats["vacuous_side_condition"] += 1
        return True
    return left == right


def conditions_hold(model: StaticModel, rho: Valuation, cs: Sequence[SideCondition]) -> bool:
    return all(side_condition_holds(model, rho, c) for c in cs)


# -- rules -------------------------------------------------------------------

def unhoused_variables(rule: RewritingRule) -> set[Variable]:
    """Variables used on the right or in conditions but not bound by the left."""
    return (free_vars(rule.rhs) | free_vars(list(rule.conditions))) - free_vars(rule.lhs)


def check_rule_wf(rule: RewritingRule) -> bool:
    return not unhoused_variables(rule)


def minimal_valuation(phi: Term, g: Term) -> dict[Variable, Term] | None:
    """The valuation with domain exactly FV(phi) satisfying phi against g, if any.

    Works in two phases: walk both trees collecting ``(variable, subterm)``
    constraints while checking the rigid structure, then unify the constraints
    per variable.
    """
    constraints: list[tuple[Variable, Term]] = []
    work = [(phi, g)]
    while work:
        p, t = work.pop()
        if type(p) is Leaf:
            v = p.value
            if type(v) is Variable:
                constraints.append((v, t))
            elif not (type(t) is Leaf and type(t.value) is type(v) and t.value == v):
                return None
            continue
        if type(t) is not Node or t.symbol != p.symbol or len(t.children) != len(p.children):
            return None
        work.extend(zip(p.children, t.children))

    by_var: dict[Variable, list[Term]] = {}
    for v, t in constraints:
        by_var.setdefault(v, []).append(t)
    rho: dict[Variable, Term] = {}
    for v, ts in by_var.items():
        first = ts[0]
        if any(other != first for other in ts[1:]):
            return None
        rho[v] = first
    return rho


def applicable_rules(model: StaticModel, theory: RewritingTheory, g: Term) -> list[Witness]:
    """Every rule that relates ``g`` to some successor, with its minimal valuation."""
    out = []
    for i, rule in enumerate(theory.rules):
        rho = minimal_valuation(rule.lhs, g)
        if rho is None or not sat_sym(model, rho, g, rule.lhs):
            continue
        if conditions_hold(model, rho, rule.conditions):
            out.append(Witness(i, rule, rho))
    return out


def step_related(
    model: StaticModel,
    theory: RewritingTheory,
    g1: Term,
    g2: Term,
    action: str | None = None,
    rule_index: int | None = None,
) -> Witness | None:
    """A rule and valuation relating ``g1`` to ``g2``, or None.

    ``action`` and ``rule_index`` optionally restrict which rules may serve as
    the witness.
    """
    for i, rule in enumerate(theory.rules):
        if rule_index is not None and i != rule_index:
            continue
        if action is not None and rule.action != action:
            continue
        rho = minimal_valuation(rule.lhs, g1)
        if rho is None:
            continue
        if (
            sat_sym(model, rho, g1, rule.lhs)
            and sat_exprterm(model, rho, g2, rule.rhs)
            and conditions_hold(model, rho, rule.conditions)
        ):
            return Witness(i, rule, rho)
    return None


def first_trace_violation(
    model: StaticModel,
    theory: RewritingTheory,
    g_start: Term,
    word: Sequence[str],
    g_end: Term,
    intermediates: Sequence[Term],
) -> int | None:
    """Index of the first step of a claimed trace that is not justified.

    ``intermediates`` lists the terms strictly between ``g_start`` and
    ``g_end``, so it has ``len(word) - 1`` entries (or none for an empty word).
    Returns None when the whole trace checks; ``len(word)`` signals a
    shape mismatch (wrong number of intermediates, or an empty word with
    distinct endpoints).
    """
    if not word:
        return None if (not intermediates and g_start == g_end) else 0
    if len(intermediates) != len(word) - 1:
        return len(word)
    terms = [g_start, *intermediates, g_end]
    for i, a in enumerate(word):
        if step_related(model, theory, terms[i], terms[i + 1], action=a) is None:
            return i
    return None


def trace_related(
    model: StaticModel,
    theory: RewritingTheory,
    g_start: Term,
    word: Sequence[str],
    g_end: Term,
    intermediates: Sequence[Term] = (),
) -> bool:
    return first_trace_violation(model, theory, g_start, word, g_end, intermediates) is None
