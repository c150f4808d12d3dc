#!/usr/bin/env python3
"""Exhaustively check the amendment guarantees over a range of electorate sizes.

For every peak vector, status quo, and vote policy it asserts that each
iterative amendment step is universally accepted, that the final threshold is
the stable point (or the status quo when already past it), and that one-step
amendment agrees. Prints per-size statistics.

Example:
    python scripts/amendment_sweep.py --max-n 7
"""

import argparse
import itertools
import sys
import time

from acceptmax.adc import threshold_family
from acceptmax.amendment import (
    AmendmentInstance,
    VotePolicy,
    amend_iterative,
    amend_one_step,
    check_universal_acceptance,
    h_threshold,
)


def sweep(n: int) -> dict:
    family = list(threshold_family(n))
    runs = failures = amended = 0
    for peaks in itertools.product(family, repeat=n):
        h = h_threshold(peaks, n)
        for status_quo in family:
            for policy in VotePolicy:
                inst = AmendmentInstance(peaks, status_quo, policy)
                trace = amend_iterative(inst)
                one = amend_one_step(inst)
                expected = h if status_quo <= h else status_quo
                ok = (
                    check_universal_acceptance(trace, inst)
                    and trace.final_outcome == expected
                    and one.stable == h
                    and (status_quo >= h or len(one.accepted_by) == n)
                    and (status_quo > h or one.outcome == h)
                )
                runs += 1
                failures += not ok
                amended += trace.final_outcome != status_quo
    return {"n": n, "runs": runs, "failures": failures, "amended": amended}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--min-n", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=7)
    args = parser.parse_args(argv)

    total_failures = 0
    for n in range(args.min_n, args.max_n + 1):
        started = time.time()
        stats = sweep(n)
        stats["seconds"] = round(time.time() - started, 2)
        total_failures += stats["failures"]
        print(stats)
    return 0 if total_failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
