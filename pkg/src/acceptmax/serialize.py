"""JSON instance files and deterministic machine-readable reports.

All rationals are serialized as ``{"num": ..., "den": ...}`` and all
thresholds as integers ``t`` with a display fraction ``delta = (t-1)/n``,
so reports are exact and byte-stable across runs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import adc, amendment, core


class ParseError(ValueError):
    """Input file or payload cannot be turned into a valid instance."""


AGENT_TYPES = {
    # name -> (conjunctive, implementation_indifferent)
    "consequentialist": (False, True),
    "absolute_proceduralist": (False, False),
    "ii_proceduralist": (False, True),
    "absolute_disjunctivist": (False, False),
    "absolute_conjunctivist": (True, False),
    "ii_disjunctivist": (False, True),
    "ii_conjunctivist": (True, True),
}

_EMPTY_RULES = ("consequentialist",)
_EMPTY_OUTCOMES = ("absolute_proceduralist", "ii_proceduralist")


def _field(obj, key, where):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def _agent_flags(type_name, where):
    if type_name not in AGENT_TYPES:
        raise ParseError(f"{where}: unknown agent type {type_name!r}")
    return AGENT_TYPES[type_name]


def fraction_to_dict(value: Fraction) -> dict:
    f = Fraction(value)
    return {"num": f.numerator, "den": f.denominator}


def fraction_from_obj(obj, where) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(_field(obj, "num", where), _field(obj, "den", where))
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise ParseError(f"{where}: expected a rational")


def _parse_adc_agent(obj, i, n):
    where = f"agents[{i}]"
    type_name = _field(obj, "type", where)
    conj, ii = _agent_flags(type_name, where)
    outcomes = frozenset(_field(obj, "Y", where))
    thresholds = set(obj.get("R_t", []))
    for d in obj.get("R_delta", []):
        thresholds.add(adc.threshold_of(fraction_from_obj(d, where), n))
    if type_name in _EMPTY_RULES and thresholds:
        raise ParseError(f"{where}: type {type_name!r} must have no rule set")
    if type_name in _EMPTY_OUTCOMES and outcomes:
        raise ParseError(f"{where}: type {type_name!r} must have no outcome set")
    return adc.AdcAgent(
        thresholds=frozenset(thresholds),
        outcomes=outcomes,
        conjunctive=conj,
        implementation_indifferent=ii,
    )


def parse_adc(obj) -> adc.AdcInstance:
    n = _field(obj, "n", "adc instance")
    votes = tuple(_field(obj, "votes", "adc instance"))
    if len(votes) != n:
        raise ParseError(f"adc instance: expected {n} votes, got {len(votes)}")
    agents = tuple(
        _parse_adc_agent(a, i, n)
        for i, a in enumerate(_field(obj, "agents", "adc instance"))
    )
    feasible = obj.get("feasible_t")
    try:
        return adc.AdcInstance(
            votes=votes,
            agents=agents,
            feasible_thresholds=frozenset(feasible) if feasible is not None else None,
        )
    except core.ValidationError as exc:
        raise ParseError(f"adc instance: {exc}") from exc


def parse_generic(obj) -> core.GenericInstance:
    rules = tuple(
        core.RuleRef(_field(r, "id", f"rules[{i}]"), _field(r, "value", f"rules[{i}]"))
        for i, r in enumerate(_field(obj, "rules", "generic instance"))
    )
    agents = []
    for i, a in enumerate(_field(obj, "agents", "generic instance")):
        where = f"agents[{i}]"
        type_name = _field(a, "type", where)
        conj, ii = _agent_flags(type_name, where)
        rule_ids = frozenset(a.get("R", []))
        outcomes = frozenset(a.get("Y", []))
        if type_name in _EMPTY_RULES and rule_ids:
            raise ParseError(f"{where}: type {type_name!r} must have no rule set")
        if type_name in _EMPTY_OUTCOMES and outcomes:
            raise ParseError(f"{where}: type {type_name!r} must have no outcome set")
        agents.append(
            core.SatisfyingSpec(
                rule_ids=rule_ids,
                outcomes=outcomes,
                conjunctive=conj,
                implementation_indifferent=ii,
                vote=a.get("vote"),
            )
        )
    outcomes = tuple(_field(obj, "outcomes", "generic instance"))
    try:
        return core.GenericInstance(
            outcomes=outcomes,
            rules=rules,
            feasible_outcomes=frozenset(obj.get("feasible_outcomes", outcomes)),
            feasible_rule_ids=frozenset(
                obj.get("feasible_rules", [r.id for r in rules])
            ),
            agents=tuple(agents),
        )
    except core.ValidationError as exc:
        raise ParseError(f"generic instance: {exc}") from exc


def parse_amendment(obj) -> amendment.AmendmentInstance:
    n = _field(obj, "n", "amendment instance")
    peaks = tuple(_field(obj, "peaks_t", "amendment instance"))
    if len(peaks) != n:
        raise ParseError(f"amendment instance: expected {n} peaks, got {len(peaks)}")
    try:
        return amendment.AmendmentInstance(
            peaks=peaks,
            status_quo=_field(obj, "status_quo_t", "amendment instance"),
            vote_policy=amendment.VotePolicy(obj.get("vote_policy", "nearer")),
        )
    except (core.ValidationError, ValueError) as exc:
        raise ParseError(f"amendment instance: {exc}") from exc


def parse_instance(obj):
    kind = _field(obj, "kind", "instance")
    if kind == "adc":
        return parse_adc(obj)
    if kind == "generic":
        return parse_generic(obj)
    if kind == "amendment":
        return parse_amendment(obj)
    raise ParseError(f"instance: unknown kind {kind!r}")


def load_instance(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return parse_instance(obj)


# ---------------------------------------------------------------------------
# Serialization back to JSON payloads.


def _agent_type_name(conjunctive, implementation_indifferent, has_rules, has_outcomes):
    if not conjunctive and not has_rules:
        return "consequentialist"
    if not conjunctive and not has_outcomes:
        return "ii_proceduralist" if implementation_indifferent else "absolute_proceduralist"
    stem = "conjunctivist" if conjunctive else "disjunctivist"
    return ("ii_" if implementation_indifferent else "absolute_") + stem


def adc_instance_to_dict(instance: adc.AdcInstance) -> dict:
    return {
        "kind": "adc",
        "n": instance.n,
        "votes": "".join(instance.votes),
        "feasible_t": sorted(instance.feasible_thresholds),
        "agents": [
            {
                "type": _agent_type_name(
                    a.conjunctive,
                    a.implementation_indifferent,
                    bool(a.thresholds),
                    bool(a.outcomes),
                ),
                "Y": sorted(a.outcomes),
                "R_t": sorted(a.thresholds),
            }
            for a in instance.agents
        ],
    }


def amendment_instance_to_dict(instance: amendment.AmendmentInstance) -> dict:
    return {
        "kind": "amendment",
        "n": instance.n,
        "status_quo_t": instance.status_quo,
        "peaks_t": list(instance.peaks),
        "vote_policy": instance.vote_policy.value,
    }


def _threshold_fields(t: int, n: int) -> dict:
    return {"t": t, "delta": fraction_to_dict(adc.delta_of(t, n))}


def solve_report_to_dict(report: core.SolveReport, n: int, adc_n: int | None = None) -> dict:
    decision = {"rule": report.decision.rule.id, "outcome": report.decision.outcome}
    if adc_n is not None:
        t = int(report.decision.rule.id.lstrip("t"))
        decision.update(_threshold_fields(t, adc_n))
    return {
        "decision": decision,
        "accepted_by": sorted(report.accepted_by),
        "count": report.acceptance_count,
        "n": n,
        "rate": fraction_to_dict(report.acceptance_rate),
    }


def oracle_result_to_dict(result: core.OracleResult, n: int, adc_n=None) -> dict:
    out = solve_report_to_dict(result.report, n, adc_n)
    out["tally"] = [
        {"rule": d.rule.id, "outcome": d.outcome, "count": count}
        for d, count in result.tally
    ]
    return out


def trace_to_dict(trace: amendment.AmendmentTrace, instance) -> dict:
    n = instance.n
    return {
        "steps": [
            {
                "status_quo": _threshold_fields(s.status_quo, n),
                "proposal": _threshold_fields(s.proposal, n),
                "votes": "".join(s.votes),
                "outcome": _threshold_fields(s.outcome, n),
                "accepted_by": sorted(s.accepted_by),
                "universal": len(s.accepted_by) == n,
            }
            for s in trace.steps
        ],
        "final": {
            "rule": _threshold_fields(trace.final_rule, n),
            "outcome": _threshold_fields(trace.final_outcome, n),
        },
        "universal": all(len(s.accepted_by) == n for s in trace.steps),
        "n": n,
    }


def one_step_to_dict(report, instance) -> dict:
    n = instance.n
    out = {
        "stable": _threshold_fields(report.stable, n),
        "rule": _threshold_fields(report.rule, n),
        "outcome": _threshold_fields(report.outcome, n),
        "amended": report.votes is not None,
        "n": n,
    }
    if report.votes is not None:
        out["votes"] = "".join(report.votes)
        out["accepted_by"] = sorted(report.accepted_by)
        out["universal"] = len(report.accepted_by) == n
    return out


def bounds_report_to_dict(report) -> dict:
    def rate(f):
        return None if f is None else fraction_to_dict(f)

    return {
        "class": report.class_id,
        "n": report.n,
        "k": report.k,
        "mode": report.mode,
        "seed": report.seed,
        "samples": report.samples,
        "observed_min_rate": rate(report.observed_min_rate),
        "formula_rate": rate(report.formula_rate),
        "witness": None if report.witness is None else adc_instance_to_dict(report.witness),
        "match": report.match,
    }


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, no whitespace drift, no timestamps."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
