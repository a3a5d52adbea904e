"""Benchmark harness over the bundled language definitions."""

from __future__ import annotations

import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Sequence

from .frontend import CSEQ, EMPTY_CSEQ, compile_source
from .interpreter import RunResult, run
from .programs import from_unary, initial_configuration, substitute_args, unary
from .semantics import RewritingTheory
from .static_model import default_model
from .syntax import parse_ground_term, print_term
from .terms import Leaf, Node, Term

LANGUAGES = "rewlang.languages"


def bundled_definitions() -> dict[str, str]:
    """Source text of every bundled ``.m`` definition, keyed by stem."""
    out = {}
    for entry in resources.files(LANGUAGES).iterdir():
        if entry.name.endswith(".m"):
            out[entry.name[:-2]] = entry.read_text(encoding="utf-8")
    return dict(sorted(out.items()))


def bundled_program(name: str) -> Term:
    return parse_ground_term(resources.files(LANGUAGES).joinpath(f"{name}.term").read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def bundled_theory(name: str) -> RewritingTheory:
    _, theory = compile_source(bundled_definitions()[name], default_model())
    return theory


# -- reference implementations -----------------------------------------------

def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def triangular(n: int) -> int:
    return n * (n + 1) // 2


def _code_result(final: Term) -> Term | None:
    """The sole value left on the code stack of a ``c[...]`` configuration."""
    if type(final) is not Node or final.symbol != "c" or not final.children:
        return None
    stack = final.children[0]
    if type(stack) is not Node or stack.symbol != CSEQ or len(stack.children) != 2:
        return None
    if stack.children[1] != Node(EMPTY_CSEQ, ()):
        return None
    return stack.children[0]


def _unary_result(final: Term) -> int | None:
    v = _code_result(final)
    return None if v is None else from_unary(v)


def _int_result(final: Term) -> int | None:
    v = _code_result(final)
    if type(v) is Leaf and type(v.value) is int:
        return v.value
    return None


# -- cases -------------------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkCase:
    name: str
    definition: str
    program: Callable[[int], Term]
    expected: Callable[[int, Term], bool]
    fuel: Callable[[int], int]
    default_sizes: tuple[int, ...]

    @property
    def theory(self) -> RewritingTheory:
        return bundled_theory(self.definition)

    def initial(self, n: int) -> Term:
        return initial_configuration(self.theory, self.program(n))


def _tc_program(n: int) -> Term:
    return Node("state", (Leaf(n), Leaf(0)))


def _tc_expected(n: int, final: Term) -> bool:
    return final == Node("state", (Leaf(0), Leaf(triangular(n))))


def _imp_program(n: int) -> Term:
    return substitute_args(bundled_program("imp-count-to"), [Leaf(n)])


def _native_fib_program(n: int) -> Term:
    return Node("fib", (Leaf(n), Leaf(0), Leaf(1)))


def _native_fib_expected(n: int, final: Term) -> bool:
    return final == Node("result", (Leaf(fib(n)),))


CASES: dict[str, BenchmarkCase] = {
    c.name: c
    for c in (
        BenchmarkCase(
            "two-counters", "two-counters", _tc_program, _tc_expected,
            lambda n: n + 1, (10, 100, 1_000, 10_000, 100_000),
        ),
        BenchmarkCase(
            "unary-fib", "unary-fib", lambda n: Node("fib", (unary(n),)),
            lambda n, final: _unary_result(final) == fib(n),
            lambda n: 10_000_000, (1, 2, 4, 6, 8, 10, 12),
        ),
        BenchmarkCase(
            "unary-fact", "unary-fact", lambda n: Node("fact", (unary(n),)),
            lambda n, final: _unary_result(final) == math.factorial(n),
            lambda n: 10_000_000, (1, 2, 3, 4, 5, 6),
        ),
        BenchmarkCase(
            "native-fib", "native-fib", _native_fib_program, _native_fib_expected,
            lambda n: n + 2, (1, 11, 21, 51, 101, 1001),
        ),
        BenchmarkCase(
            "imp-count-to", "imp", _imp_program,
            lambda n, final: _int_result(final) == triangular(n),
            lambda n: 100 * n + 1_000, (1, 2, 3, 4, 5, 6, 7),
        ),
    )
}


class ExpectationFailure(AssertionError):
    def __init__(self, case: str, size: int, final: Term, exhausted: bool):
        self.case = case
        self.size = size
        self.final = final
        why = "fuel exhausted" if exhausted else "unexpected final term"
        super().__init__(f"{case} n={size}: {why}: {print_term(final)}")


def run_case(case: BenchmarkCase, n: int, record_trace: bool = False) -> RunResult:
    return run(default_model(), case.theory, case.initial(n), case.fuel(n), record_trace=record_trace)


@dataclass(frozen=True)
class BenchRecord:
    case: str
    size: int
    steps: int
    median_seconds: float
    repetitions: int

    def as_dict(self) -> dict:
        return asdict(self)


def _measure(case: BenchmarkCase, n: int, repetitions: int) -> BenchRecord:
    times = []
    steps = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = run_case(case, n)
        times.append(time.perf_counter() - t0)
        if result.exhausted or not case.expected(n, result.final):
            raise ExpectationFailure(case.name, n, result.final, result.exhausted)
        if steps is not None and steps != result.steps_taken:
            raise AssertionError(f"{case.name} n={n}: step count changed between repetitions")
        steps = result.steps_taken
    return BenchRecord(case.name, n, steps or 0, statistics.median(times), repetitions)


def _measure_named(case_name: str, n: int, repetitions: int) -> BenchRecord:
    return _measure(CASES[case_name], n, repetitions)


def run_suite(
    cases: Iterable[str | BenchmarkCase],
    sizes: Sequence[int] | None = None,
    repetitions: int = 3,
    parallel: bool = False,
) -> list[BenchRecord]:
    """Run every case at every size, checking the expected final term.

    ``sizes`` overrides each case's default sizes. With ``parallel`` the jobs
    run in worker processes, which is fine for correctness but skews timings;
    only cases registered in :data:`CASES` can be shipped to workers.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    jobs = []
    for c in cases:
        case = CASES[c] if isinstance(c, str) else c
        for n in sizes if sizes is not None else case.default_sizes:
            jobs.append((case, n))
    if not parallel:
        return [_measure(case, n, repetitions) for case, n in jobs]
    with ProcessPoolExecutor() as pool:
        futures = [pool.submit(_measure_named, case.name, n, repetitions) for case, n in jobs]
        return [f.result() for f in futures]


def format_table(records: Sequence[BenchRecord]) -> str:
    header = ("case", "n", "steps", "median [s]")
    rows = [(r.case, str(r.size), str(r.steps), f"{r.median_seconds:.4f}") for r in records]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) if i == 0 else h.rjust(w) for i, (h, w) in enumerate(zip(header, widths)))]
    for row in rows:
        lines.append("  ".join(v.ljust(w) if i == 0 else v.rjust(w) for i, (v, w) in enumerate(zip(row, widths))))
    return "\n".join(lines)
