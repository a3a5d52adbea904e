"""Command-line entry point: ``rewlang compile | run | print-theory | bench``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence, TextIO

from . import bench, theory_file
from .frontend import Diagnostic, DefinitionError, compile_definition, parse_definition
from .interpreter import run
from .programs import MissingArgumentError, initial_configuration, parse_argument, substitute_args
from .semantics import RewritingRule, first_trace_violation
from .static_model import default_model
from .syntax import ParseError, parse_ground_term, print_expr, print_term
from .terms import Call

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3
EXIT_VIOLATION = 4

RECURSION_LIMIT = 50_000


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _size_list(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size list {text!r}") from None
    if not sizes or any(n < 0 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be non-negative integers")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rewlang", description="Compile and run rewriting-based language definitions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a .m definition to a theory file")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("run", help="run a program term under a compiled theory")
    p.add_argument("theory", type=Path)
    p.add_argument("program", type=Path)
    p.add_argument("--arg", action="append", default=[], metavar="TERM",
                   help="value for $arg/$argN placeholders, in order (bare integers allowed)")
    p.add_argument("--fuel", type=_positive_int, default=10_000_000)
    p.add_argument("--trace", action="store_true", help="print one JSON line per step")
    p.add_argument("--trace-terms", action="store_true", help="include the full term in trace lines")
    p.add_argument("--check", action="store_true", help="validate the trace against the declarative semantics")
    p.add_argument("--stats", action="store_true", help="print per-rule fire counts and wall time")
    p.add_argument("--json", action="store_true", help="print the result as a JSON object")

    p = sub.add_parser("print-theory", help="print the desugared rules of a theory file")
    p.add_argument("theory", type=Path)

    p = sub.add_parser("bench", help="run the bundled benchmarks")
    p.add_argument("--case", action="append", choices=sorted(bench.CASES), dest="cases")
    p.add_argument("--sizes", type=_size_list, help="comma-separated sizes (default: per case)")
    p.add_argument("--repetitions", type=_positive_int, default=3)
    p.add_argument("--parallel", action="store_true", help="run jobs in worker processes (timings unreliable)")
    p.add_argument("--json", action="store_true", help="print records as JSON lines instead of a table")
    return parser


def _report(diags: Sequence[Diagnostic], path: Path, err: TextIO) -> None:
    for d in diags:
        print(d.format(str(path)), file=err)


def cmd_compile(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        source = args.input.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"{args.input}: error: {exc.strerror or exc}", file=err)
        return EXIT_DIAGNOSTICS
    model = default_model()
    try:
        definition = parse_definition(source)
        theory = compile_definition(definition, model)
    except DefinitionError as exc:
        _report(exc.diagnostics, args.input, err)
        return EXIT_DIAGNOSTICS
    if len(theory) == 0:
        _report([Diagnostic("definition contains no rules", None, "warning")], args.input, err)
    try:
        theory_file.write(args.output, theory_file.from_definition(definition, theory, source))
    except OSError as exc:
        print(f"{args.output}: error: {exc.strerror or exc}", file=err)
        return EXIT_DIAGNOSTICS
    return EXIT_OK


def _load_theory(path: Path, err: TextIO) -> theory_file.CompiledTheoryFile | None:
    try:
        return theory_file.read(path)
    except OSError as exc:
        print(f"{path}: error: {exc.strerror or exc}", file=err)
    except theory_file.TheoryFileError as exc:
        print(f"{path}: error: {exc}", file=err)
    return None


def cmd_run(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    ctf = _load_theory(args.theory, err)
    if ctf is None:
        return EXIT_DIAGNOSTICS
    theory = ctf.theory
    try:
        program = parse_ground_term(args.program.read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"{args.program}: error: {exc.strerror or exc}", file=err)
        return EXIT_DIAGNOSTICS
    except ParseError as exc:
        print(Diagnostic(exc.message, exc.location).format(str(args.program)), file=err)
        return EXIT_DIAGNOSTICS
    values = []
    for i, text in enumerate(args.arg, 1):
        try:
            values.append(parse_argument(text))
        except ParseError as exc:
            print(f"--arg #{i}: error: {exc}", file=err)
            return EXIT_USAGE
    try:
        program = substitute_args(program, values)
    except MissingArgumentError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    model = default_model()
    g0 = initial_configuration(theory, program)
    record = args.check or args.trace_terms
    t0 = time.perf_counter()
    result = run(model, theory, g0, args.fuel, record_trace=record)
    elapsed = time.perf_counter() - t0

    if args.trace or args.trace_terms:
        for i, (action, idx) in enumerate(zip(result.action_word, result.rule_indices)):
            line = {"step": i, "action": action, "rule": idx}
            if args.trace_terms:
                line["term"] = print_term(result.terms[i + 1])
            print(json.dumps(line, ensure_ascii=False, sort_keys=True), file=out)

    counts = {}
    for rule, n in zip(theory.rules, result.fire_counts):
        if n:
            counts[rule.action] = counts.get(rule.action, 0) + n

    if args.json:
        doc = {
            "final": print_term(result.final),
            "steps": result.steps_taken,
            "exhausted": result.exhausted,
            "rule_counts": counts,
        }
        if args.stats:
            doc["wall_time_s"] = round(elapsed, 6)
        print(json.dumps(doc, ensure_ascii=False, sort_keys=True), file=out)
    else:
        print(f"final: {print_term(result.final)}", file=out)
        print(f"steps: {result.steps_taken}", file=out)
        print(f"exhausted: {str(result.exhausted).lower()}", file=out)
        if args.stats:
            for label, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
                print(f"  {n:>10}  {label}", file=out)
            print(f"wall time: {elapsed:.6f} s", file=out)

    if args.check:
        bad = first_trace_violation(model, theory, g0, result.action_word, result.final, result.intermediates)
        if bad is not None:
            print(f"error: trace check failed at step {bad}", file=err)
            return EXIT_VIOLATION
    if result.exhausted:
        print(f"warning: fuel exhausted after {result.steps_taken} steps", file=err)
        return EXIT_EXHAUSTED
    return EXIT_OK


def format_rule(rule: RewritingRule) -> str:
    text = f"@rule [{rule.action}]: {print_term(rule.lhs)} => {print_term(rule.rhs)}"
    guards = []
    for c in rule.conditions:
        if c.rhs == Call("bool.true"):
            guards.append(print_expr(c.lhs))
        else:
            guards.append(f"{print_expr(c.lhs)} == {print_expr(c.rhs)}")
    if guards:
        text += " where " + ", ".join(guards)
    return text + ";"


def cmd_print_theory(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    ctf = _load_theory(args.theory, err)
    if ctf is None:
        return EXIT_DIAGNOSTICS
    for rule in ctf.theory.rules:
        print(format_rule(rule), file=out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    cases = args.cases or list(bench.CASES)
    try:
        records = bench.run_suite(cases, args.sizes, args.repetitions, parallel=args.parallel)
    except bench.ExpectationFailure as exc:
        print(f"error: {exc}", file=err)
        return EXIT_VIOLATION
    if args.json:
        for r in records:
            print(json.dumps(r.as_dict(), sort_keys=True), file=out)
    else:
        print(bench.format_table(records), file=out)
    return EXIT_OK


COMMANDS = {
    "compile": cmd_compile,
    "run": cmd_run,
    "print-theory": cmd_print_theory,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args, out or sys.stdout, err or sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
