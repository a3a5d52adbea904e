"""Run the bundled benchmark cases and write a table plus JSON records."""

import argparse
import json
import sys
from pathlib import Path

from rewlang.bench import CASES, format_table, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--case", action="append", choices=sorted(CASES))
    parser.add_argument("--repetitions", type=int, default=5)
    parser.add_argument("--out", type=Path, help="optional JSON-lines output file")
    args = parser.parse_args()
    sys.setrecursionlimit(50_000)
    records = run_suite(args.case or sorted(CASES), repetitions=args.repetitions)
    print(format_table(records))
    if args.out:
        args.out.write_text("".join(json.dumps(r.as_dict()) + "\n" for r in records))
    return 0


if __name__ == "__main__":
    sys.exit(main())
