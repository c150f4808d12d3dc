#!/usr/bin/env python3
"""Verify the worst-case acceptance-rate table across instance classes.

Runs the exhaustive sweep at small electorate sizes and seeded randomized
search at larger ones, printing one JSON report per (class, n) and a final
summary. Exits non-zero if any check fails.

Example:
    python scripts/verify_table1.py --exhaustive-n 3 4 --randomized-n 5 6 7
"""

import argparse
import sys
import time

from acceptmax.bounds import CLASSES, worst_case_rate
from acceptmax.serialize import bounds_report_to_dict, dumps


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--exhaustive-n", type=int, nargs="+", default=[3, 4])
    parser.add_argument("--randomized-n", type=int, nargs="+", default=[5, 6, 7])
    parser.add_argument("--samples", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--k", type=int, default=2,
                        help="parameter for the k-feasible-rules class")
    parser.add_argument("--classes", nargs="+", default=sorted(CLASSES))
    args = parser.parse_args(argv)

    failures = 0
    started = time.time()
    for class_id in args.classes:
        k = args.k if CLASSES[class_id].needs_k else None
        for n in args.exhaustive_n:
            report = worst_case_rate(class_id, n, mode="exhaustive", k=k)
            print(dumps(bounds_report_to_dict(report)))
            failures += not report.match
        for n in args.randomized_n:
            report = worst_case_rate(
                class_id, n, mode="randomized", seed=args.seed,
                samples=args.samples, k=k,
            )
            print(dumps(bounds_report_to_dict(report)))
            failures += not report.match
    status = "OK" if failures == 0 else f"{failures} FAILURES"
    print(f"# {status} in {time.time() - started:.1f}s", file=sys.stderr)
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
