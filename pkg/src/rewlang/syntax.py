"""Concrete syntax for terms: tokenizer, recursive-descent parser and printer.

Canonical printed forms::

    plus[(@builtin-int 3),(@builtin-int 4)]     node with builtin leaves
    c[X,STATE]                                  symbolic term
    c[z.plus(X,(@builtin-int 1)),[unitValue[]]] expression term

Builtin literals may also be written bracketed, ``[(@builtin-int 3)]``, which
is how language definitions spell them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .terms import Call, Leaf, Lit, Node, Term, Variable, is_ground
from .values import ERROR, DictValue, ErrorValue, ListValue, SymbolValue


@dataclass(frozen=True)
class Location:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, message: str, location: Location | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location is None:
            return self.message
        return f"{self.location}: {self.message}"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    location: Location


_TOKEN_SPEC = [
    ("COMMENT", r"/\*.*?\*/"),
    ("WS", r"\s+"),
    ("DIRECTIVE", r"@[A-Za-z][A-Za-z0-9_-]*"),
    ("ARROW", r"=>"),
    ("EQEQ", r"=="),
    ("STRING", r'"(?:[^"\\\n]|\\.)*"'),
    ("INT", r"-?[0-9]+"),
    ("VAR", r"[A-Z][A-Za-z0-9_]*"),
    ("IDENT", r"[a-z_$][A-Za-z0-9_$]*(?:\.[A-Za-z0-9_$]+)*"),
    ("PUNCT", r"[\[\](),;:/]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{k}>{p})" for k, p in _TOKEN_SPEC), re.DOTALL)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        loc = Location(line, pos - line_start + 1)
        if m is None:
            if source.startswith("/*", pos):
                raise ParseError("unterminated comment", loc)
            raise ParseError(f"unexpected character {source[pos]!r}", loc)
        kind = m.lastgroup
        text = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind if kind != "PUNCT" else text, text, loc))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", Location(line, pos - line_start + 1)))
    return tokens


class TermParser:
    """Recursive-descent parser over a token list.

    Subclassed by the definition parser in :mod:`rewlang.frontend`.
    """

    def __init__(self, source: str) -> None:
        self.tokens = tokenize(source)
        self.pos = 0

    # -- token plumbing ---------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        if self.at(kind, text):
            return self.advance()
        wanted = what or (repr(text) if text else kind.lower())
        got = "end of input" if self.tok.kind == "EOF" else repr(self.tok.text)
        raise ParseError(f"expected {wanted}, found {got}", self.tok.location)

    def error(self, message: str, token: Token | None = None) -> ParseError:
        return ParseError(message, (token or self.tok).location)

    def expect_eof(self) -> None:
        if not self.at("EOF"):
            raise self.error(f"unexpected {self.tok.text!r} after end of term")

    # -- builtin literals -------------------------------------------------
    def _at_literal(self) -> bool:
        return self.at("(") and self.peek().kind == "DIRECTIVE" and self.peek().text.startswith("@builtin-")

    def _at_bracketed_literal(self) -> bool:
        return (
            self.at("[")
            and self.peek().kind == "("
            and self.peek(2).kind == "DIRECTIVE"
            and self.peek(2).text.startswith("@builtin-")
        )

    def parse_literal(self) -> Leaf:
        """``(@builtin-... )`` or ``[(@builtin-... )]``."""
        if self.accept("["):
            lit = self.parse_literal()
            self.expect("]")
            return lit
        self.expect("(")
        kw = self.expect("DIRECTIVE", what="builtin literal keyword")
        kind = kw.text
        if kind == "@builtin-int":
            t = self.expect("INT", what="integer")
            value: object = int(t.text)
        elif kind == "@builtin-bool":
            t = self.expect("IDENT", what="'true' or 'false'")
            if t.text not in ("true", "false"):
                raise self.error("expected 'true' or 'false'", t)
            value = t.text == "true"
        elif kind == "@builtin-string":
            t = self.expect("STRING", what="string literal")
            value = json.loads(t.text)
        elif kind == "@builtin-error":
            value = ERROR
        elif kind == "@builtin-symbol":
            t = self.expect("STRING", what="quoted symbol name")
            value = SymbolValue(json.loads(t.text))
        elif kind == "@builtin-list":
            self.expect("[")
            items = []
            if not self.at("]"):
                items.append(self.parse_pattern(allow_vars=False))
                while self.accept(","):
                    items.append(self.parse_pattern(allow_vars=False))
            self.expect("]")
            value = ListValue(items)
        elif kind == "@builtin-dict":
            self.expect("[")
            entries = {}
            if not self.at("]"):
                while True:
                    k_loc = self.tok
                    k = self.parse_pattern(allow_vars=False)
                    self.expect("ARROW", what="'=>'")
                    v = self.parse_pattern(allow_vars=False)
                    if k in entries:
                        raise self.error("duplicate dictionary key", k_loc)
                    entries[k] = v
                    if not self.accept(","):
                        break
            self.expect("]")
            value = DictValue(entries)
        else:
            raise self.error(f"unknown builtin literal kind {kind!r}", kw)
        self.expect(")")
        return Leaf(value)

    # -- terms ------------------------------------------------------------
    def parse_pattern(self, allow_vars: bool = True) -> Term:
        """Symbolic term (or ground term when ``allow_vars`` is false)."""
        t = self.tok
        if t.kind == "VAR":
            if not allow_vars:
                raise self.error(f"variable {t.text} not allowed in a ground term")
            self.advance()
            return Leaf(Variable(t.text))
        if t.kind == "IDENT":
            self.advance()
            if not self.accept("["):
                return Node(t.text, ())
            children = []
            if not self.at("]"):
                children.append(self.parse_pattern(allow_vars))
                while self.accept(","):
                    children.append(self.parse_pattern(allow_vars))
            self.expect("]")
            return Node(t.text, children)
        if self._at_literal() or self._at_bracketed_literal():
            return self.parse_literal()
        raise self.error(f"expected a term, found {t.text or 'end of input'!r}")

    def parse_expr(self) -> object:
        t = self.tok
        if t.kind == "VAR":
            self.advance()
            return Variable(t.text)
        if t.kind == "IDENT":
            self.advance()
            self.expect("(", what=f"'(' after function name {t.text}")
            args = []
            if not self.at(")"):
                args.append(self.parse_expr())
                while self.accept(","):
                    args.append(self.parse_expr())
            self.expect(")")
            return Call(t.text, args)
        if self._at_literal() or self._at_bracketed_literal():
            return Lit(self.parse_literal())
        if self.at("["):
            start = self.advance()
            quoted = self.parse_pattern()
            self.expect("]")
            if not is_ground(quoted):
                raise self.error("quoted term inside an expression must be ground", start)
            return Lit(quoted)
        if self.accept("("):
            e = self.parse_expr()
            self.expect(")")
            return e
        raise self.error(f"expected an expression, found {t.text or 'end of input'!r}")

    def parse_eterm(self) -> Term:
        """Expression term: nodes built with ``[]``, expressions at the leaves."""
        t = self.tok
        if t.kind == "IDENT" and self.peek().kind != "(":
            self.advance()
            if not self.accept("["):
                return Node(t.text, ())
            children = []
            if not self.at("]"):
                children.append(self.parse_eterm())
                while self.accept(","):
                    children.append(self.parse_eterm())
            self.expect("]")
            return Node(t.text, children)
        return Leaf(self.parse_expr())


def parse_term(source: str) -> Term:
    """Parse a symbolic (possibly ground) term."""
    p = TermParser(source)
    t = p.parse_pattern()
    p.expect_eof()
    return t


def parse_ground_term(source: str) -> Term:
    p = TermParser(source)
    t = p.parse_pattern(allow_vars=False)
    p.expect_eof()
    return t


def parse_expression(source: str):
    p = TermParser(source)
    e = p.parse_expr()
    p.expect_eof()
    return e


def parse_eterm(source: str) -> Term:
    p = TermParser(source)
    t = p.parse_eterm()
    p.expect_eof()
    return t


# -- printing --------------------------------------------------------------

def format_value(v: object) -> str:
    tp = type(v)
    if tp is bool:
        return "(@builtin-bool true)" if v else "(@builtin-bool false)"
    if tp is int:
        return f"(@builtin-int {v})"
    if tp is str:
        return f"(@builtin-string {json.dumps(v, ensure_ascii=False)})"
    if tp is ErrorValue:
        return "(@builtin-error)"
    if tp is SymbolValue:
        return f"(@builtin-symbol {json.dumps(v.name, ensure_ascii=False)})"
    if tp is ListValue:
        return "(@builtin-list [" + ",".join(print_term(t) for t in v.items) + "])"
    if tp is DictValue:
        body = ",".join(f"{print_term(k)}=>{print_term(x)}" for k, x in v.items())
        return "(@builtin-dict [" + body + "])"
    raise TypeError(f"not a builtin value: {v!r}")


def print_expr(e: object) -> str:
    tp = type(e)
    if tp is Variable:
        return e.name
    if tp is Call:
        return f"{e.function}(" + ",".join(print_expr(a) for a in e.args) + ")"
    if tp is Lit:
        inner = e.term
        if type(inner) is Leaf:
            return format_value(inner.value)
        return "[" + print_term(inner) + "]"
    raise TypeError(f"not an expression: {e!r}")


def _print_into(t: Term, out: list[str]) -> None:
    if type(t) is Node:
        out.append(t.symbol)
        out.append("[")
        first = True
        for c in t.children:
            if not first:
                out.append(",")
            first = False
            _print_into(c, out)
        out.append("]")
        return
    v = t.value
    tp = type(v)
    if tp is Variable or tp is Call or tp is Lit:
        out.append(print_expr(v))
    else:
        out.append(format_value(v))


def print_term(t: Term) -> str:
    """Canonical text of a ground, symbolic or expression term."""
    out: list[str] = []
    _print_into(t, out)
    return "".join(out)

