"""Builtin function names and their interpretation over ground terms.

Every interpretation is total: an argument tuple of the wrong shape yields the
ground term ``Leaf(ERROR)`` instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping, NamedTuple, Sequence

from .terms import Leaf, Node, Term
from .values import ERROR, DictValue, ListValue

TRUE = Leaf(True)
FALSE = Leaf(False)
ERR = Leaf(ERROR)


class BuiltinFunction(NamedTuple):
    arity: int
    impl: Callable[..., Term]


class ArityError(ValueError):
    pass


class UnknownFunctionError(KeyError):
    pass


@dataclass(frozen=True)
class StaticModel:
    functions: Mapping[str, BuiltinFunction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", MappingProxyType(dict(self.functions)))

    def arity(self, name: str) -> int | None:
        fn = self.functions.get(name)
        return None if fn is None else fn.arity

    def __contains__(self, name: object) -> bool:
        return name in self.functions

    def extended(self, name: str, arity: int, impl: Callable[..., Term]) -> "StaticModel":
        """A new model with one more function; names must stay unique."""
        if name in self.functions:
            raise ValueError(f"builtin function {name!r} is already registered")
        table = dict(self.functions)
        table[name] = BuiltinFunction(arity, impl)
        return StaticModel(table)


def apply(model: StaticModel, f: str, args: Sequence[Term]) -> Term:
    fn = model.functions.get(f)
    if fn is None:
        raise UnknownFunctionError(f)
    if len(args) != fn.arity:
        raise ArityError(f"{f} expects {fn.arity} arguments, got {len(args)}")
    return fn.impl(*args)


def _bool(b: bool) -> Term:
    return TRUE if b else FALSE


def _leaf_of(t: Term, tp: type):
    if type(t) is Leaf and type(t.value) is tp:
        return t.value
    return None


def _is_leaf_type(tp: type) -> Callable[[Term], Term]:
    def check(t: Term) -> Term:
        return _bool(type(t) is Leaf and type(t.value) is tp)

    return check


def _z_binop(op: Callable[[int, int], int]) -> Callable[[Term, Term], Term]:
    def impl(a: Term, b: Term) -> Term:
        if type(a) is Leaf and type(b) is Leaf:
            x, y = a.value, b.value
            if type(x) is int and type(y) is int:
                return Leaf(op(x, y))
        return ERR

    return impl


def _z_cmp(op: Callable[[int, int], bool]) -> Callable[[Term, Term], Term]:
    def impl(a: Term, b: Term) -> Term:
        if type(a) is Leaf and type(b) is Leaf:
            x, y = a.value, b.value
            if type(x) is int and type(y) is int:
                return TRUE if op(x, y) else FALSE
        return ERR

    return impl


def _bool_binop(op: Callable[[bool, bool], bool]) -> Callable[[Term, Term], Term]:
    def impl(a: Term, b: Term) -> Term:
        x, y = _leaf_of(a, bool), _leaf_of(b, bool)
        if x is None or y is None:
            return ERR
        return _bool(op(x, y))

    return impl


def _bool_neg(a: Term) -> Term:
    x = _leaf_of(a, bool)
    return ERR if x is None else _bool(not x)


def _same_symbol(a: Term, b: Term) -> Term:
    return _bool(type(a) is Node and type(b) is Node and a.symbol == b.symbol)


def _is_builtin(a: Term) -> Term:
    return _bool(type(a) is Leaf)


def _map_empty() -> Term:
    return Leaf(DictValue())


def _map_update(d: Term, k: Term, v: Term) -> Term:
    m = _leaf_of(d, DictValue)
    if m is None:
        return ERR
    return Leaf(m.updated(k, v))


def _map_lookup(d: Term, k: Term) -> Term:
    m = _leaf_of(d, DictValue)
    if m is None:
        return ERR
    found = m.get(k)
    return ERR if found is None else found


def _string_eq(a: Term, b: Term) -> Term:
    x, y = _leaf_of(a, str), _leaf_of(b, str)
    if x is None or y is None:
        return ERR
    return _bool(x == y)


def _list_cons(x: Term, lst: Term) -> Term:
    items = _leaf_of(lst, ListValue)
    if items is None:
        return ERR
    return Leaf(ListValue((x,) + items.items))


_DEFAULT_TABLE: dict[str, BuiltinFunction] = {
    "bool.true": BuiltinFunction(0, lambda: TRUE),
    "bool.false": BuiltinFunction(0, lambda: FALSE),
    "map.empty": BuiltinFunction(0, _map_empty),
    "z.is": BuiltinFunction(1, _is_leaf_type(int)),
    "bool.is": BuiltinFunction(1, _is_leaf_type(bool)),
    "bool.neg": BuiltinFunction(1, _bool_neg),
    "string.is": BuiltinFunction(1, _is_leaf_type(str)),
    "list.is": BuiltinFunction(1, _is_leaf_type(ListValue)),
    "map.is": BuiltinFunction(1, _is_leaf_type(DictValue)),
    "term.is_builtin": BuiltinFunction(1, _is_builtin),
    "z.plus": BuiltinFunction(2, _z_binop(lambda x, y: x + y)),
    "z.minus": BuiltinFunction(2, _z_binop(lambda x, y: x - y)),
    "z.eq": BuiltinFunction(2, _z_cmp(lambda x, y: x == y)),
    "z.le": BuiltinFunction(2, _z_cmp(lambda x, y: x <= y)),
    "z.lt": BuiltinFunction(2, _z_cmp(lambda x, y: x < y)),
    "bool.and": BuiltinFunction(2, _bool_binop(lambda x, y: x and y)),
    "bool.or": BuiltinFunction(2, _bool_binop(lambda x, y: x or y)),
    "bool.eq": BuiltinFunction(2, _bool_binop(lambda x, y: x == y)),
    "term.same_symbol": BuiltinFunction(2, _same_symbol),
    "map.lookup": BuiltinFunction(2, _map_lookup),
    "string.eq": BuiltinFunction(2, _string_eq),
    "list.cons": BuiltinFunction(2, _list_cons),
    "map.update": BuiltinFunction(3, _map_update),
}

_DEFAULT = StaticModel(_DEFAULT_TABLE)


def default_model() -> StaticModel:
    return _DEFAULT


__all__ = [
    "ArityError",
    "BuiltinFunction",
    "ERR",
    "FALSE",
    "StaticModel",
    "TRUE",
    "UnknownFunctionError",
    "apply",
    "default_model",
]
