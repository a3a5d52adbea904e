"""Builtin values carried by ground-term leaves, and the canonical term order.

Booleans, integers and strings are stored as the native Python ``bool``,
``int`` and ``str``. The remaining variants get small immutable classes.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Mapping

from .terms import Call, Leaf, Lit, Node, Term, Variable


class ErrorValue:
    __slots__ = ()
    _instance: "ErrorValue | None" = None

    def __new__(cls) -> "ErrorValue":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return type(other) is ErrorValue

    def __hash__(self) -> int:
        return hash("builtin-error")

    def __repr__(self) -> str:
        return "ERROR"

    def __reduce__(self):
        return (ErrorValue, ())


ERROR = ErrorValue()


class SymbolValue:
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("builtin values are immutable")

    def __eq__(self, other: object) -> bool:
        return type(other) is SymbolValue and other.name == self.name

    def __hash__(self) -> int:
        return hash(("sym", self.name))

    def __repr__(self) -> str:
        return f"SymbolValue({self.name!r})"

    def __reduce__(self):
        return (SymbolValue, (self.name,))


class ListValue:
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Term] = ()) -> None:
        object.__setattr__(self, "items", tuple(items))

    def __setattr__(self, key, value):
        raise AttributeError("builtin values are immutable")

    def __eq__(self, other: object) -> bool:
        return type(other) is ListValue and other.items == self.items

    def __hash__(self) -> int:
        return hash(("list", self.items))

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return f"ListValue({list(self.items)!r})"

    def __reduce__(self):
        return (ListValue, (self.items,))


class DictValue:
    """Finite map from ground terms to ground terms.

    Iteration follows the canonical term order of the keys.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, entries: Mapping[Term, Term] | Iterable[tuple[Term, Term]] = ()) -> None:
        object.__setattr__(self, "_map", dict(entries))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("builtin values are immutable")

    def get(self, key: Term) -> Term | None:
        return self._map.get(key)

    def __contains__(self, key: object) -> bool:
        return key in self._map

    def __len__(self) -> int:
        return len(self._map)

    def updated(self, key: Term, value: Term) -> "DictValue":
        m = dict(self._map)
        m[key] = value
        return DictValue(m)

    def items(self) -> list[tuple[Term, Term]]:
        return sorted(self._map.items(), key=lambda kv: term_key(kv[0]))

    def __iter__(self) -> Iterator[Term]:
        return iter(k for k, _ in self.items())

    def __eq__(self, other: object) -> bool:
        return type(other) is DictValue and other._map == self._map

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(("dict", frozenset(self._map.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"DictValue({dict(self.items())!r})"

    def __reduce__(self):
        return (DictValue, (self.items(),))


def is_builtin_value(v: Any) -> bool:
    return type(v) in (bool, int, str, ErrorValue, SymbolValue, ListValue, DictValue)


def _value_key(v: Any) -> tuple:
    tp = type(v)
    if tp is ErrorValue:
        return (0,)
    if tp is bool:
        return (1, v)
    if tp is int:
        return (2, v)
    if tp is SymbolValue:
        return (3, v.name)
    if tp is str:
        return (4, v)
    if tp is ListValue:
        return (5, tuple(term_key(t) for t in v.items))
    if tp is DictValue:
        return (6, tuple((term_key(k), term_key(x)) for k, x in v.items()))
    if tp is Variable:
        return (7, v.name)
    if tp is Lit:
        return (8, term_key(v.term))
    if tp is Call:
        return (9, v.function, tuple(_value_key(a) for a in v.args))
    raise TypeError(f"not a leaf value: {v!r}")


def term_key(t: Term) -> tuple:
    """Sort key realising the canonical total order on terms."""
    if type(t) is Leaf:
        return (0, _value_key(t.value))
    return (1, t.symbol, len(t.children), tuple(term_key(c) for c in t.children))


def term_lt(a: Term, b: Term) -> bool:
    return term_key(a) < term_key(b)
