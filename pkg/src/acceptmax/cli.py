"""Command line interface: solve instances, run amendments, verify bounds, generate instances.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import adc, amendment, bounds, core, serialize

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

_GENERIC_SELECTORS = {
    "generic": core.max_accept_all_types,
    "abs-proc": core.max_accept_absolute_proceduralists,
    "abs-conj": core.max_accept_absolute_conjunctivists,
    "conseq-generic": core.max_accept_consequentialists,
}

_ADC_SELECTORS = {
    "adc-consequentialist": adc.adc_consequentialists,
    "adc-abs-disj": adc.adc_absolute_disjunctivists,
    "adc-ii-disj": adc.adc_ii_disjunctivists,
    "adc-ii-conj": adc.adc_ii_conjunctivists,
}

SELECTORS = ["auto", "oracle"] + sorted(_GENERIC_SELECTORS) + sorted(_ADC_SELECTORS)


def _auto_adc(instance: adc.AdcInstance):
    agents = instance.agents
    if all(not a.conjunctive and not a.thresholds for a in agents):
        return adc.adc_consequentialists(instance)
    if all(not a.conjunctive and not a.implementation_indifferent for a in agents):
        return adc.adc_absolute_disjunctivists(instance)
    if all(not a.conjunctive and a.implementation_indifferent for a in agents):
        return adc.adc_ii_disjunctivists(instance)
    if all(a.conjunctive and a.implementation_indifferent for a in agents):
        return adc.adc_ii_conjunctivists(instance)
    if all(a.conjunctive and not a.implementation_indifferent for a in agents):
        return core.max_accept_absolute_conjunctivists(adc.adc_to_generic(instance))
    return core.max_accept_all_types(adc.adc_to_generic(instance))


def _auto_generic(instance: core.GenericInstance):
    agents = instance.agents
    if all(not a.conjunctive and not a.rule_ids for a in agents):
        return core.max_accept_consequentialists(instance)
    if all(a.is_absolute_disjunctive() and not a.outcomes for a in agents):
        return core.max_accept_absolute_proceduralists(instance)
    if all(a.is_absolute_disjunctive() for a in agents):
        return core.max_accept_absolute_disjunctivists(instance)
    if all(a.conjunctive and not a.implementation_indifferent for a in agents):
        return core.max_accept_absolute_conjunctivists(instance)
    return core.max_accept_all_types(instance)


def cmd_solve(args) -> int:
    instance = serialize.load_instance(args.path)
    if isinstance(instance, amendment.AmendmentInstance):
        raise serialize.ParseError("solve expects an adc or generic instance")
    is_adc = isinstance(instance, adc.AdcInstance)
    selector = args.mechanism
    if selector in _ADC_SELECTORS:
        if not is_adc:
            raise core.ValidationError(f"selector {selector!r} requires an adc instance")
        result = _ADC_SELECTORS[selector](instance)
    else:
        generic = adc.adc_to_generic(instance) if is_adc else instance
        if selector == "oracle":
            oracle = core.oracle_max_accept(generic)
            payload = serialize.oracle_result_to_dict(
                oracle, generic.n, instance.n if is_adc else None
            )
            print(serialize.dumps(payload))
            return EXIT_OK
        if selector == "auto":
            result = _auto_adc(instance) if is_adc else _auto_generic(instance)
        else:
            result = _GENERIC_SELECTORS[selector](generic)
    payload = serialize.solve_report_to_dict(
        result, len(instance.agents), instance.n if is_adc else None
    )
    print(serialize.dumps(payload))
    return EXIT_OK


def cmd_amend(args) -> int:
    instance = serialize.load_instance(args.path)
    if not isinstance(instance, amendment.AmendmentInstance):
        raise serialize.ParseError("amend expects an amendment instance")
    if args.one_step:
        payload = serialize.one_step_to_dict(amendment.amend_one_step(instance), instance)
    else:
        payload = serialize.trace_to_dict(amendment.amend_iterative(instance), instance)
    print(serialize.dumps(payload))
    return EXIT_OK


def cmd_bounds(args) -> int:
    class_ids = sorted(bounds.CLASSES) if args.class_id == "all" else [args.class_id]
    for class_id in class_ids:
        if class_id not in bounds.CLASSES:
            raise core.ValidationError(f"unknown class {class_id!r}")
    all_match = True
    for class_id in class_ids:
        k = args.k if bounds.CLASSES[class_id].needs_k else None
        reports = bounds.verify_row(
            class_id,
            args.n,
            mode=args.mode,
            seed=args.seed,
            samples=args.samples,
            k=k,
            workers=args.threads,
        )
        for report in reports:
            print(serialize.dumps(serialize.bounds_report_to_dict(report)))
            all_match = all_match and report.match
    return EXIT_OK if all_match else EXIT_MISMATCH


def _gen_adc(class_id, n, rng, k):
    feasible = frozenset(adc.threshold_family(n))
    for _attempt in range(10_000):
        votes = tuple(rng.choice(adc.OUTCOMES) for _ in range(n))
        votes_p = sum(1 for v in votes if v == adc.PROPOSAL)
        per_agent = [
            bounds.agent_options(class_id, n, votes_p, v, feasible, k) for v in votes
        ]
        if all(per_agent):
            agents = tuple(rng.choice(opts) for opts in per_agent)
            return adc.AdcInstance(votes, agents, feasible)
    raise core.ValidationError(f"class {class_id!r} unsatisfiable for n={n}")


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    n = args.n[0] if args.n else 4
    if args.class_id == "amendment":
        family = list(adc.threshold_family(n))
        for _ in range(args.count):
            instance = amendment.AmendmentInstance(
                peaks=tuple(rng.choice(family) for _ in range(n)),
                status_quo=rng.choice(family),
            )
            print(serialize.dumps(serialize.amendment_instance_to_dict(instance)))
        return EXIT_OK
    if args.class_id not in bounds.CLASSES:
        raise core.ValidationError(f"unknown class {args.class_id!r}")
    k = args.k if bounds.CLASSES[args.class_id].needs_k else None
    for _ in range(args.count):
        instance = _gen_adc(args.class_id, n, rng, k)
        print(serialize.dumps(serialize.adc_instance_to_dict(instance)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acceptmax",
        description="Acceptance-maximizing collective decisions over rules and outcomes.",
    )
    parser.add_argument("--format", choices=["json"], default="json")
    parser.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="worker processes for exhaustive sweeps (output is identical for any value)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance file")
    p_solve.add_argument("path")
    p_solve.add_argument("--mechanism", choices=SELECTORS, default="auto")
    p_solve.set_defaults(func=cmd_solve)

    p_amend = sub.add_parser("amend", help="run the amendment process on an instance file")
    p_amend.add_argument("path")
    p_amend.add_argument("--one-step", action="store_true")
    p_amend.set_defaults(func=cmd_amend)

    p_bounds = sub.add_parser("bounds", help="verify worst-case acceptance rates")
    p_bounds.add_argument("class_id", metavar="class")
    p_bounds.add_argument("--n", type=int, action="append", required=True)
    p_bounds.add_argument(
        "--mode", choices=["auto", "exhaustive", "randomized"], default="auto"
    )
    p_bounds.add_argument("--seed", type=int, default=0)
    p_bounds.add_argument("--samples", type=int, default=100_000)
    p_bounds.add_argument("--k", type=int, default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_gen = sub.add_parser("gen", help="generate seeded random instances")
    p_gen.add_argument("class_id", metavar="class")
    p_gen.add_argument("--n", type=int, action="append")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--count", type=int, default=1)
    p_gen.add_argument("--k", type=int, default=None)
    p_gen.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (serialize.ParseError, core.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
