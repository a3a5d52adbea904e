"""Time the two-counters loop at growing sizes and report steps per second."""

import argparse
import time
from dataclasses import dataclass

from rewlang.bench import bundled_theory
from rewlang.interpreter import run
from rewlang.static_model import default_model
from rewlang.terms import Leaf, Node


@dataclass(slots=True)
class ScaleConfig:
    sizes: tuple[int, ...] = (10, 1_000, 100_000, 1_000_000)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("sizes", nargs="*", type=int)
    args = parser.parse_args()
    config = ScaleConfig(tuple(args.sizes)) if args.sizes else ScaleConfig()
    model, theory = default_model(), bundled_theory("two-counters")
    print(f"{'n':>10} {'steps':>10} {'seconds':>9} {'steps/s':>11}")
    for n in config.sizes:
        start = time.perf_counter()
        result = run(model, theory, Node("state", (Leaf(n), Leaf(0))), n + 1)
        elapsed = time.perf_counter() - start
        assert result.final == Node("state", (Leaf(0), Leaf(n * (n + 1) // 2)))
        rate = result.steps_taken / elapsed if elapsed else float("inf")
        print(f"{n:>10} {result.steps_taken:>10} {elapsed:>9.3f} {rate:>11.0f}")


if __name__ == "__main__":
    main()
