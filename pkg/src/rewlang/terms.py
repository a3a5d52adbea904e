"""First-order terms over an arbitrary leaf type.

One ``Leaf``/``Node`` pair serves all three term families:

* ground terms: leaves hold builtin values,
* symbolic terms: leaves hold builtin values or :class:`Variable`,
* expression terms: leaves hold expressions (:class:`Lit`, :class:`Variable`
  or :class:`Call`).

All objects are immutable; subtrees may be shared freely.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping, Union

Symbol = str
FunctionName = str


class Variable:
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        if not name:
            raise ValueError("variable name must be non-empty")
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("Variable is immutable")

    def __eq__(self, other: object) -> bool:
        return type(other) is Variable and other.name == self.name

    def __hash__(self) -> int:
        return hash(("var", self.name))

    def __lt__(self, other: "Variable") -> bool:
        return self.name < other.name

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"

    def __reduce__(self):
        return (Variable, (self.name,))


def same_leaf_value(a: Any, b: Any) -> bool:
    # bool is a subclass of int in Python; builtin values must not conflate them.
    return type(a) is type(b) and a == b


class Term:
    __slots__ = ()


class Leaf(Term):
    __slots__ = ("value",)

    def __init__(self, value: Any) -> None:
        object.__setattr__(self, "value", value)

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(other) is not Leaf:
            return False
        a, b = self.value, other.value
        return type(a) is type(b) and a == b

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"Leaf({self.value!r})"

    def __reduce__(self):
        return (Leaf, (self.value,))


class Node(Term):
    __slots__ = ("symbol", "children", "_hash")

    def __init__(self, symbol: Symbol, children: Iterable[Term] = ()) -> None:
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "children", tuple(children))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("terms are immutable")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(other) is not Node:
            return False
        return self.symbol == other.symbol and self.children == other.children

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.symbol, self.children))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if not self.children:
            return f"Node({self.symbol!r})"
        return f"Node({self.symbol!r}, {list(self.children)!r})"

    def __reduce__(self):
        return (Node, (self.symbol, self.children))


class Lit:
    """An expression denoting a fixed ground term."""

    __slots__ = ("term",)

    def __init__(self, term: Term) -> None:
        object.__setattr__(self, "term", term)

    def __setattr__(self, key, value):
        raise AttributeError("expressions are immutable")

    def __eq__(self, other: object) -> bool:
        return type(other) is Lit and other.term == self.term

    def __hash__(self) -> int:
        return hash(("lit", self.term))

    def __repr__(self) -> str:
        return f"Lit({self.term!r})"

    def __reduce__(self):
        return (Lit, (self.term,))


class Call:
    """Application of a builtin function name to argument expressions."""

    __slots__ = ("function", "args")

    def __init__(self, function: FunctionName, args: Iterable["Expression"] = ()) -> None:
        object.__setattr__(self, "function", function)
        object.__setattr__(self, "args", tuple(args))

    def __setattr__(self, key, value):
        raise AttributeError("expressions are immutable")

    def __eq__(self, other: object) -> bool:
        return (
            type(other) is Call
            and other.function == self.function
            and other.args == self.args
        )

    def __hash__(self) -> int:
        return hash(("call", self.function, self.args))

    def __repr__(self) -> str:
        return f"Call({self.function!r}, {list(self.args)!r})"

    def __reduce__(self):
        return (Call, (self.function, self.args))


Expression = Union[Lit, Variable, Call]
GroundTerm = Term
SymbolicTerm = Term
ExpressionTerm = Term
Valuation = Mapping[Variable, Term]


def size(t: Term) -> int:
    if type(t) is Leaf:
        return 1
    return 1 + sum(size(c) for c in t.children)


def is_ground(t: Term) -> bool:
    """True when no leaf of ``t`` is a variable or an expression."""
    if type(t) is Leaf:
        return type(t.value) not in (Variable, Lit, Call)
    return all(is_ground(c) for c in t.children)


def subst(t: Term, x: Variable, replacement: Term) -> Term:
    if type(t) is Leaf:
        return replacement if type(t.value) is Variable and t.value == x else t
    new_children = tuple(subst(c, x, replacement) for c in t.children)
    if all(a is b for a, b in zip(new_children, t.children)):
        return t
    return Node(t.symbol, new_children)


def instantiate(t: Term, rho: Valuation) -> Term:
    """Replace every variable leaf of a symbolic term by its binding in ``rho``.

    Unbound variables are left in place.
    """
    if type(t) is Leaf:
        v = t.value
        if type(v) is Variable:
            return rho.get(v, t)
        return t
    return Node(t.symbol, [instantiate(c, rho) for c in t.children])


def _collect_vars(obj: Any, acc: set[Variable]) -> None:
    tp = type(obj)
    if tp is Variable:
        acc.add(obj)
    elif tp is Leaf:
        _collect_vars(obj.value, acc)
    elif tp is Node:
        for c in obj.children:
            _collect_vars(c, acc)
    elif tp is Call:
        for a in obj.args:
            _collect_vars(a, acc)
    elif tp is Lit:
        # literals are ground by construction
        return
    elif isinstance(obj, (list, tuple, set, frozenset)):
        for item in obj:
            _collect_vars(item, acc)


def free_vars(obj: Any) -> set[Variable]:
    """Variables occurring in a term, an expression, or a collection of them.

    Builtin leaves contribute nothing. Tuples (including named tuples such as
    side conditions) are traversed element-wise.
    """
    acc: set[Variable] = set()
    _collect_vars(obj, acc)
    return acc


def symbols(t: Term) -> set[Symbol]:
    acc: set[Symbol] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if type(u) is Node:
            acc.add(u.symbol)
            stack.extend(u.children)
        elif type(u) is Leaf and type(u.value) is Lit:
            stack.append(u.value.term)
    return acc


def expr_symbols(e: Any) -> set[Symbol]:
    """Node symbols mentioned anywhere inside an expression or expression term."""
    acc: set[Symbol] = set()
    stack = [e]
    while stack:
        u = stack.pop()
        tp = type(u)
        if tp is Node:
            acc.add(u.symbol)
            stack.extend(u.children)
        elif tp is Leaf:
            stack.append(u.value)
        elif tp is Lit:
            stack.append(u.term)
        elif tp is Call:
            stack.extend(u.args)
    return acc


def calls(e: Any) -> list[Call]:
    """Every function-call node inside an expression, expression term or collection, pre-order."""
    out: list[Call] = []
    stack = [e]
    while stack:
        u = stack.pop()
        tp = type(u)
        if tp is Node:
            stack.extend(reversed(u.children))
        elif tp is Leaf:
            stack.append(u.value)
        elif tp is Call:
            out.append(u)
            stack.extend(reversed(u.args))
        elif isinstance(u, (list, tuple)):
            stack.extend(reversed(u))
    return out


def pattern_to_eterm(t: Term) -> Term:
    """View a symbolic term as an expression term with the same meaning."""
    if type(t) is Leaf:
        v = t.value
        if type(v) is Variable:
            return t
        return Leaf(Lit(t))
    return Node(t.symbol, [pattern_to_eterm(c) for c in t.children])


def rename_in_expr(e: Expression, x: Variable, replacement: Expression) -> Expression:
    if type(e) is Variable:
        return replacement if e == x else e
    if type(e) is Call:
        return Call(e.function, [rename_in_expr(a, x, replacement) for a in e.args])
    return e
