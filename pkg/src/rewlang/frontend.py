"""Language definitions in sugared rule syntax, and their translation to theories.

A definition file (``*.m``) is a sequence of declarations::

    @frames: [simple(CODE): c[builtin.cseq[CODE,REST], STATE]];
    @value(X): bool.or(z.is(X), bool.is(X));
    @context(HOLE): c[HOLE, STATE];
    @strictness: [plus of_arity 2 in [0,1]];
    @rule/simple [aexpr.plus]: plus[X,Y] => z.plus(X, Y) where bool.and(z.is(X), z.is(Y));

Compilation emits, in this order, a heating and a cooling rule for every
strict argument position (declaration order), then the user rules in file
order with frames applied and ``where`` guards turned into side conditions.

Heating and cooling for symbol ``s`` of arity ``n`` at position ``p``, with
context ``C[HOLE]``::

    heat.s.p: C[cseq[s[X0..Xn-1], REST]]
           => C[cseq[Xp, cseq[freezer.s.p[X0..Xp-1,Xp+1..Xn-1], REST]]]
           where not value(Xp)
    cool.s.p: C[cseq[Xp, cseq[freezer.s.p[...], REST]]]
           => C[cseq[s[X0..Xn-1], REST]]
           where value(Xp)

``cseq`` is ``builtin.cseq`` and the empty continuation is
``builtin.empty_cseq[]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .semantics import RewritingRule, RewritingTheory, SideCondition, unhoused_variables
from .static_model import StaticModel
from .syntax import Location, ParseError, TermParser
from .terms import (
    Call,
    Expression,
    Leaf,
    Node,
    Term,
    Variable,
    calls,
    expr_symbols,
    free_vars,
    pattern_to_eterm,
    rename_in_expr,
    subst,
    symbols,
)

CSEQ = "builtin.cseq"
EMPTY_CSEQ = "builtin.empty_cseq"
FREEZER_PREFIX = "freezer."
INIT_LABEL = "init"
INIT_SYMBOL = "builtin.init"


@dataclass(frozen=True)
class Diagnostic:
    message: str
    location: Location | None = None
    severity: str = "error"

    def format(self, path: str = "<input>") -> str:
        where = f"{path}:{self.location}" if self.location else path
        return f"{where}: {self.severity}: {self.message}"


class DefinitionError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        super().__init__("; ".join(d.format() for d in diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Frame:
    name: str
    hole: Variable
    template: Term
    location: Location | None = None


@dataclass(frozen=True)
class ValuePredicate:
    variable: Variable
    expression: Expression
    location: Location | None = None

    def applied_to(self, x: Variable) -> Expression:
        return rename_in_expr(self.expression, self.variable, x)


@dataclass(frozen=True)
class Context:
    hole: Variable
    template: Term
    location: Location | None = None


@dataclass(frozen=True)
class StrictnessDecl:
    symbol: str
    arity: int
    positions: tuple[int, ...]
    location: Location | None = None


@dataclass(frozen=True)
class SugaredRule:
    label: str
    frame: str | None
    lhs: Term
    rhs: Term
    guard: Expression | None = None
    location: Location | None = None


@dataclass
class LanguageDefinition:
    frames: dict[str, Frame] = field(default_factory=dict)
    value: ValuePredicate | None = None
    context: Context | None = None
    strictness: list[StrictnessDecl] = field(default_factory=list)
    rules: list[SugaredRule] = field(default_factory=list)

    @property
    def has_init(self) -> bool:
        return any(r.label == INIT_LABEL for r in self.rules)


@dataclass(frozen=True)
class Freezer:
    freezer: str
    symbol: str
    arity: int
    position: int


def freezer_symbol(symbol: str, position: int) -> str:
    return f"{FREEZER_PREFIX}{symbol}.{position}"


# -- parsing -----------------------------------------------------------------

def _count_leaf(t: Term, x: Variable) -> int:
    if type(t) is Leaf:
        return 1 if type(t.value) is Variable and t.value == x else 0
    return sum(_count_leaf(c, x) for c in t.children)


class _DefinitionParser(TermParser):
    def __init__(self, source: str) -> None:
        super().__init__(source)
        self.definition = LanguageDefinition()
        self.diagnostics: list[Diagnostic] = []
        self._labels: dict[str, Location] = {}
        self._strict_seen: set[tuple[str, int]] = set()

    def report(self, message: str, location: Location | None) -> None:
        self.diagnostics.append(Diagnostic(message, location))

    def parse(self) -> LanguageDefinition:
        while not self.at("EOF"):
            tok = self.tok
            if tok.kind != "DIRECTIVE":
                raise self.error(f"expected a declaration, found {tok.text!r}")
            handler = {
                "@frames": self._frames,
                "@value": self._value,
                "@context": self._context,
                "@strictness": self._strictness,
                "@rule": self._rule,
            }.get(tok.text)
            if handler is None:
                raise self.error(f"unknown declaration {tok.text}")
            self.advance()
            handler(tok.location)
        return self.definition

    def _var(self) -> Variable:
        return Variable(self.expect("VAR", what="variable").text)

    def _frames(self, loc: Location) -> None:
        self.expect(":")
        self.expect("[")
        while True:
            name_tok = self.expect("IDENT", what="frame name")
            self.expect("(")
            hole = self._var()
            self.expect(")")
            self.expect(":")
            template = self.parse_pattern()
            if name_tok.text in self.definition.frames:
                self.report(f"duplicate frame {name_tok.text!r}", name_tok.location)
            elif _count_leaf(template, hole) != 1:
                self.report(
                    f"frame {name_tok.text!r}: hole {hole.name} must occur exactly once in the template",
                    name_tok.location,
                )
            else:
                self.definition.frames[name_tok.text] = Frame(name_tok.text, hole, template, name_tok.location)
            if not self.accept(","):
                break
        self.expect("]")
        self.expect(";")

    def _value(self, loc: Location) -> None:
        self.expect("(")
        x = self._var()
        self.expect(")")
        self.expect(":")
        e = self.parse_expr()
        self.expect(";")
        if self.definition.value is not None:
            self.report("duplicate @value declaration", loc)
            return
        extra = free_vars(e) - {x}
        if extra:
            names = ", ".join(sorted(v.name for v in extra))
            self.report(f"@value expression may only mention {x.name}; also uses {names}", loc)
        self.definition.value = ValuePredicate(x, e, loc)

    def _context(self, loc: Location) -> None:
        self.expect("(")
        hole = self._var()
        self.expect(")")
        self.expect(":")
        template = self.parse_pattern()
        self.expect(";")
        if self.definition.context is not None:
            self.report("duplicate @context declaration", loc)
            return
        if _count_leaf(template, hole) != 1:
            self.report(f"context hole {hole.name} must occur exactly once in the template", loc)
            return
        self.definition.context = Context(hole, template, loc)

    def _nat(self) -> int:
        t = self.expect("INT", what="natural number")
        n = int(t.text)
        if n < 0:
            raise self.error("expected a natural number", t)
        return n

    def _strictness(self, loc: Location) -> None:
        self.expect(":")
        self.expect("[")
        while True:
            sym_tok = self.expect("IDENT", what="symbol")
            self.expect("IDENT", "of_arity", what="'of_arity'")
            arity = self._nat()
            self.expect("IDENT", "in", what="'in'")
            self.expect("[")
            positions = [self._nat()]
            while self.accept(","):
                positions.append(self._nat())
            self.expect("]")
            ok = True
            for p in positions:
                if p >= arity:
                    self.report(f"strictness position {p} out of range for {sym_tok.text} of arity {arity}", sym_tok.location)
                    ok = False
            if len(set(positions)) != len(positions):
                self.report(f"repeated strictness position for {sym_tok.text}", sym_tok.location)
                ok = False
            for p in positions:
                if (sym_tok.text, p) in self._strict_seen:
                    self.report(f"strictness of {sym_tok.text} at position {p} declared twice", sym_tok.location)
                    ok = False
            if ok:
                self._strict_seen.update((sym_tok.text, p) for p in positions)
                self.definition.strictness.append(
                    StrictnessDecl(sym_tok.text, arity, tuple(positions), sym_tok.location)
                )
            if not self.accept(","):
                break
        self.expect("]")
        self.expect(";")

    def _rule(self, loc: Location) -> None:
        frame = None
        if self.accept("/"):
            frame = self.expect("IDENT", what="frame name").text
        self.expect("[")
        label_tok = self.tok
        if label_tok.kind not in ("IDENT", "VAR"):
            raise self.error("expected a rule label")
        self.advance()
        self.expect("]")
        self.expect(":")
        lhs = self.parse_pattern()
        self.expect("ARROW", what="'=>'")
        rhs = self.parse_eterm()
        guard = None
        if self.accept("IDENT", "where"):
            guard = self.parse_expr()
        self.expect(";", what="';' at end of rule")
        label = label_tok.text
        if label in self._labels:
            self.report(f"duplicate rule label {label!r} (first defined at {self._labels[label]})", label_tok.location)
            return
        self._labels[label] = label_tok.location
        self.definition.rules.append(SugaredRule(label, frame, lhs, rhs, guard, loc))


def parse_definition(source: str) -> LanguageDefinition:
    """Parse definition text; raises :class:`DefinitionError` with located diagnostics."""
    try:
        parser = _DefinitionParser(source)
    except ParseError as exc:
        raise DefinitionError([Diagnostic(exc.message, exc.location)]) from None
    try:
        definition = parser.parse()
    except ParseError as exc:
        raise DefinitionError(parser.diagnostics + [Diagnostic(exc.message, exc.location)]) from None
    if parser.diagnostics:
        raise DefinitionError(parser.diagnostics)
    return definition


# -- desugaring --------------------------------------------------------------

class FrontendError(Exception):
    def __init__(self, message: str, location: Location | None = None) -> None:
        super().__init__(message)
        self.diagnostic = Diagnostic(message, location)


def desugar_guard(guard: Expression | None) -> list[SideCondition]:
    if guard is None:
        return []
    return [SideCondition(guard, Call("bool.true"))]


def apply_frame(definition: LanguageDefinition, rule: SugaredRule) -> tuple[Term, Term]:
    if rule.frame is None:
        return rule.lhs, rule.rhs
    frame = definition.frames.get(rule.frame)
    if frame is None:
        raise FrontendError(f"rule {rule.label!r}: unknown frame {rule.frame!r}", rule.location)
    passthrough = free_vars(frame.template) - {frame.hole}
    used = free_vars(rule.lhs) | free_vars(rule.rhs)
    if rule.guard is not None:
        used |= free_vars(rule.guard)
    captured = passthrough & used
    if captured:
        names = ", ".join(sorted(v.name for v in captured))
        raise FrontendError(
            f"rule {rule.label!r}: variable(s) {names} clash with frame {frame.name!r}",
            rule.location,
        )
    lhs = subst(frame.template, frame.hole, rule.lhs)
    rhs = subst(pattern_to_eterm(frame.template), frame.hole, rule.rhs)
    return lhs, rhs


def _fresh(base: str, taken: set[str]) -> Variable:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return Variable(name)


def freezers(definition: LanguageDefinition) -> list[Freezer]:
    return [
        Freezer(freezer_symbol(d.symbol, p), d.symbol, d.arity, p)
        for d in definition.strictness
        for p in d.positions
    ]


def expand_strictness(definition: LanguageDefinition) -> list[RewritingRule]:
    if not definition.strictness:
        return []
    missing = [name for name, decl in (("@value", definition.value), ("@context", definition.context)) if decl is None]
    if missing:
        raise FrontendError(
            f"strictness declarations require {' and '.join(missing)}",
            definition.strictness[0].location,
        )
    ctx = definition.context
    value = definition.value
    taken = {v.name for v in free_vars(ctx.template)}

    def plug(t: Term) -> Term:
        return subst(ctx.template, ctx.hole, t)

    def cseq(head: Term, tail: Term) -> Term:
        return Node(CSEQ, (head, tail))

    rules: list[RewritingRule] = []
    for decl in definition.strictness:
        local = set(taken)
        xs = [_fresh(f"X{i}", local) for i in range(decl.arity)]
        rest = Leaf(_fresh("REST", local))
        args = [Leaf(x) for x in xs]
        for p in decl.positions:
            frozen = Node(freezer_symbol(decl.symbol, p), args[:p] + args[p + 1:])
            whole = Node(decl.symbol, args)
            evaluating = cseq(args[p], cseq(frozen, rest))
            is_value = value.applied_to(xs[p])
            rules.append(
                RewritingRule(
                    plug(cseq(whole, rest)),
                    pattern_to_eterm(plug(evaluating)),
                    (SideCondition(Call("bool.neg", [is_value]), Call("bool.true")),),
                    f"heat.{decl.symbol}.{p}",
                )
            )
            rules.append(
                RewritingRule(
                    plug(evaluating),
                    pattern_to_eterm(plug(cseq(whole, rest))),
                    (SideCondition(is_value, Call("bool.true")),),
                    f"cool.{decl.symbol}.{p}",
                )
            )
    return rules


def _check_calls(model: StaticModel, obj, what: str, location: Location | None) -> list[Diagnostic]:
    out = []
    for c in calls(obj):
        arity = model.arity(c.function)
        if arity is None:
            out.append(Diagnostic(f"{what}: unknown function {c.function!r}", location))
        elif arity != len(c.args):
            out.append(
                Diagnostic(
                    f"{what}: function {c.function!r} expects {arity} argument(s), got {len(c.args)}",
                    location,
                )
            )
    return out


def _user_symbols(definition: LanguageDefinition) -> list[tuple[str, Location | None]]:
    found: list[tuple[str, Location | None]] = []
    for f in definition.frames.values():
        found += [(s, f.location) for s in symbols(f.template)]
    if definition.context is not None:
        found += [(s, definition.context.location) for s in symbols(definition.context.template)]
    if definition.value is not None:
        found += [(s, definition.value.location) for s in expr_symbols(definition.value.expression)]
    for r in definition.rules:
        found += [(s, r.location) for s in symbols(r.lhs) | expr_symbols(r.rhs)]
        if r.guard is not None:
            found += [(s, r.location) for s in expr_symbols(r.guard)]
    for d in definition.strictness:
        found.append((d.symbol, d.location))
    return found


def compile_definition(definition: LanguageDefinition, model: StaticModel) -> RewritingTheory:
    """Desugar to a theory; raises :class:`DefinitionError` listing every problem found."""
    diagnostics: list[Diagnostic] = []
    for sym, loc in _user_symbols(definition):
        if sym.startswith(FREEZER_PREFIX):
            diagnostics.append(Diagnostic(f"symbol {sym!r} uses the reserved prefix {FREEZER_PREFIX!r}", loc))
    if definition.value is not None:
        diagnostics += _check_calls(model, definition.value.expression, "@value", definition.value.location)

    rules: list[RewritingRule] = []
    try:
        rules.extend(expand_strictness(definition))
    except FrontendError as exc:
        diagnostics.append(exc.diagnostic)

    for srule in definition.rules:
        try:
            lhs, rhs = apply_frame(definition, srule)
        except FrontendError as exc:
            diagnostics.append(exc.diagnostic)
            continue
        conds = desugar_guard(srule.guard)
        what = f"rule {srule.label!r}"
        diagnostics += _check_calls(model, [rhs, conds], what, srule.location)
        rules.append(RewritingRule(lhs, rhs, tuple(conds), srule.label))

    for rule in rules:
        bad = unhoused_variables(rule)
        if bad:
            names = ", ".join(sorted(v.name for v in bad))
            loc = next((r.location for r in definition.rules if r.label == rule.action), None)
            diagnostics.append(
                Diagnostic(
                    f"rule {rule.action!r} is not well-formed: variable(s) {names} "
                    "appear on the right-hand side or in the condition but not on the left-hand side",
                    loc,
                )
            )
    if diagnostics:
        raise DefinitionError(diagnostics)
    return RewritingTheory(rules)


def compile_source(source: str, model: StaticModel) -> tuple[LanguageDefinition, RewritingTheory]:
    definition = parse_definition(source)
    return definition, compile_definition(definition, model)
