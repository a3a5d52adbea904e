"""On-disk format for compiled theories.

The file is JSON with sorted keys and fixed indentation; terms are stored in
their canonical printed form. Loading and re-serialising a file reproduces it
byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .frontend import Freezer, LanguageDefinition, freezers
from .semantics import RewritingRule, RewritingTheory, SideCondition
from .syntax import ParseError, parse_eterm, parse_expression, parse_term, print_expr, print_term
from .terms import Variable

FORMAT = "rewlang-theory"
VERSION = 1


class TheoryFileError(ValueError):
    pass


@dataclass(frozen=True)
class ValuePredicateText:
    variable: str
    expression: str


@dataclass(frozen=True)
class CompiledTheoryFile:
    theory: RewritingTheory
    source_sha256: str
    freezers: tuple[Freezer, ...] = ()
    value_predicate: ValuePredicateText | None = None

    @property
    def labels(self) -> list[str]:
        return self.theory.actions


def digest(source: str) -> str:
    return hashlib.sha256(source.encode("utf-8")).hexdigest()


def from_definition(definition: LanguageDefinition, theory: RewritingTheory, source: str) -> CompiledTheoryFile:
    vp = None
    if definition.value is not None:
        vp = ValuePredicateText(definition.value.variable.name, print_expr(definition.value.expression))
    return CompiledTheoryFile(theory, digest(source), tuple(freezers(definition)), vp)


def _rule_to_json(rule: RewritingRule) -> dict:
    return {
        "action": rule.action,
        "lhs": print_term(rule.lhs),
        "rhs": print_term(rule.rhs),
        "conditions": [[print_expr(c.lhs), print_expr(c.rhs)] for c in rule.conditions],
    }


def dumps(ctf: CompiledTheoryFile) -> str:
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "source_sha256": ctf.source_sha256,
        "labels": ctf.labels,
        "freezers": [
            {"freezer": f.freezer, "symbol": f.symbol, "arity": f.arity, "position": f.position}
            for f in ctf.freezers
        ],
        "value_predicate": (
            None
            if ctf.value_predicate is None
            else {"variable": ctf.value_predicate.variable, "expression": ctf.value_predicate.expression}
        ),
        "rules": [_rule_to_json(r) for r in ctf.theory.rules],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> CompiledTheoryFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TheoryFileError(f"not a compiled theory file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise TheoryFileError("not a compiled theory file (missing format tag)")
    if doc.get("version") != VERSION:
        raise TheoryFileError(f"unsupported theory file version {doc.get('version')!r}")
    try:
        rules = []
        for i, r in enumerate(doc["rules"]):
            try:
                rules.append(
                    RewritingRule(
                        parse_term(r["lhs"]),
                        parse_eterm(r["rhs"]),
                        tuple(SideCondition(parse_expression(a), parse_expression(b)) for a, b in r["conditions"]),
                        r["action"],
                    )
                )
            except ParseError as exc:
                raise TheoryFileError(f"rule {i}: {exc}") from None
        frz = tuple(Freezer(f["freezer"], f["symbol"], f["arity"], f["position"]) for f in doc["freezers"])
        vp_doc = doc["value_predicate"]
        vp = None if vp_doc is None else ValuePredicateText(vp_doc["variable"], vp_doc["expression"])
        if vp is not None:
            Variable(vp.variable)
            parse_expression(vp.expression)
        return CompiledTheoryFile(RewritingTheory(rules), doc["source_sha256"], frz, vp)
    except (KeyError, TypeError, ValueError, ParseError) as exc:
        if isinstance(exc, TheoryFileError):
            raise
        raise TheoryFileError(f"malformed theory file: {exc}") from None


def write(path: str | Path, ctf: CompiledTheoryFile) -> None:
    Path(path).write_text(dumps(ctf), encoding="utf-8")


def read(path: str | Path) -> CompiledTheoryFile:
    return loads(Path(path).read_text(encoding="utf-8"))
