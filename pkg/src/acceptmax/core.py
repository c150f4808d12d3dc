"""Acceptance-maximizing collective decisions over (rule, outcome) pairs.

A decision applies a rule to one observed profile of votes and yields an
outcome. Agents accept or reject decisions based on which rules and which
outcomes they find acceptable, combined conjunctively or disjunctively,
and on whether they care which rule was actually implemented or only what
it produced ("implementation indifference").

Since a single instance observes a single profile, rules are represented
extensionally by the outcome they select on that profile. Everything here
is an immutable value; all operations are pure functions and safe to call
concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


class ValidationError(ValueError):
    """Raised when an instance fails structural validation at load time."""


@dataclass(frozen=True, order=True)
class RuleRef:
    """A decision rule, identified by id and by its value on the observed profile."""

    id: str
    value_at_profile: str


@dataclass(frozen=True)
class Decision:
    """A (rule, outcome) pair with the outcome the rule selects on the profile."""

    rule: RuleRef
    outcome: str

    def __post_init__(self):
        if self.outcome != self.rule.value_at_profile:
            raise ValidationError(
                f"decision outcome {self.outcome!r} does not match "
                f"rule {self.rule.id!r} value {self.rule.value_at_profile!r}"
            )

    @property
    def sort_key(self):
        # Deterministic tie-break order: outcome first, then rule id.
        return (self.outcome, self.rule.id)


@dataclass(frozen=True)
class SatisfyingSpec:
    """Compact encoding of the set of decisions one agent accepts.

    ``rule_ids`` and ``outcomes`` are the acceptable rules and outcomes.
    ``conjunctive`` selects AND over OR for combining the two concerns.
    ``implementation_indifferent`` means the rule concern is evaluated
    counterfactually: "some acceptable rule would have produced this
    outcome" rather than "the implemented rule is acceptable".
    Consequentialists are disjunctive agents with empty ``rule_ids``;
    proceduralists are disjunctive agents with empty ``outcomes``.
    """

    rule_ids: frozenset
    outcomes: frozenset
    conjunctive: bool = False
    implementation_indifferent: bool = False
    vote: str | None = None

    def is_absolute_disjunctive(self) -> bool:
        return not self.conjunctive and not self.implementation_indifferent


@dataclass(frozen=True)
class GenericInstance:
    """One decision problem: universes, feasible subsets and the agents."""

    outcomes: tuple
    rules: tuple
    feasible_outcomes: frozenset
    feasible_rule_ids: frozenset
    agents: tuple

    def __post_init__(self):
        outcome_universe = set(self.outcomes)
        if len(outcome_universe) != len(self.outcomes):
            raise ValidationError("duplicate outcome ids")
        rule_ids = [r.id for r in self.rules]
        if len(set(rule_ids)) != len(rule_ids):
            raise ValidationError("duplicate rule ids")
        for r in self.rules:
            if r.value_at_profile not in outcome_universe:
                raise ValidationError(
                    f"rule {r.id!r} selects unknown outcome {r.value_at_profile!r}"
                )
        if not self.feasible_outcomes <= outcome_universe:
            raise ValidationError("feasible outcomes outside the outcome universe")
        if not self.feasible_rule_ids <= set(rule_ids):
            raise ValidationError("feasible rules outside the rule universe")
        if not self.agents:
            raise ValidationError("instance has no agents")
        for idx, agent in enumerate(self.agents):
            if not agent.rule_ids <= set(rule_ids):
                raise ValidationError(f"agent {idx} references unknown rule ids")
            if not agent.outcomes <= outcome_universe:
                raise ValidationError(f"agent {idx} references unknown outcomes")
            if agent.vote is not None and agent.vote not in outcome_universe:
                raise ValidationError(f"agent {idx} vote is not a known outcome")
        if not any(
            r.id in self.feasible_rule_ids and r.value_at_profile in self.feasible_outcomes
            for r in self.rules
        ):
            raise ValidationError("no feasible decision exists")

    @cached_property
    def rule_value(self) -> dict:
        return {r.id: r.value_at_profile for r in self.rules}

    @cached_property
    def n(self) -> int:
        return len(self.agents)

    def feasible_decisions(self) -> list:
        """All feasible decisions, in canonical (outcome, rule id) order."""
        decisions = [
            Decision(rule=r, outcome=r.value_at_profile)
            for r in self.rules
            if r.id in self.feasible_rule_ids
            and r.value_at_profile in self.feasible_outcomes
        ]
        decisions.sort(key=lambda d: d.sort_key)
        return decisions


@dataclass(frozen=True)
class SolveReport:
    """Chosen decision plus exactly who accepts it."""

    decision: Decision
    accepted_by: frozenset
    acceptance_count: int
    acceptance_rate: Fraction


@dataclass(frozen=True)
class OracleResult:
    """Brute-force result: the best report and the count for every feasible decision."""

    report: SolveReport
    tally: tuple  # ((Decision, count), ...) in canonical decision order


def accepts(agent: SatisfyingSpec, decision: Decision, instance: GenericInstance) -> bool:
    """Whether the agent accepts the decision, per the agent's type flags."""
    y = decision.outcome
    outcome_ok = y in agent.outcomes
    if agent.implementation_indifferent:
        values = instance.rule_value
        rule_ok = any(values[rid] == y for rid in agent.rule_ids)
    else:
        rule_ok = decision.rule.id in agent.rule_ids
    if agent.conjunctive:
        return outcome_ok and rule_ok
    return outcome_ok or rule_ok


def make_report(instance: GenericInstance, decision: Decision) -> SolveReport:
    accepted = frozenset(
        i for i, agent in enumerate(instance.agents) if accepts(agent, decision, instance)
    )
    return SolveReport(
        decision=decision,
        accepted_by=accepted,
        acceptance_count=len(accepted),
        acceptance_rate=Fraction(len(accepted), instance.n),
    )


def substitute_absolute_disjunctivist(
    agent: SatisfyingSpec, instance: GenericInstance
) -> SatisfyingSpec:
    """Absolute-disjunctive spec accepting the same decisions of the observed profile.

    Implementation-indifferent rule concerns collapse into the outcomes those
    rules realize on the profile; conjunctive rule sets are filtered down to
    the rules whose realized outcome is itself acceptable.
    """
    if agent.is_absolute_disjunctive():
        return agent
    values = instance.rule_value
    realized = frozenset(values[rid] for rid in agent.rule_ids)
    if agent.implementation_indifferent and not agent.conjunctive:
        new_rules, new_outcomes = frozenset(), agent.outcomes | realized
    elif agent.implementation_indifferent and agent.conjunctive:
        new_rules, new_outcomes = frozenset(), agent.outcomes & realized
    else:  # absolute conjunctive
        new_rules = frozenset(rid for rid in agent.rule_ids if values[rid] in agent.outcomes)
        new_outcomes = frozenset()
    return SatisfyingSpec(
        rule_ids=new_rules,
        outcomes=new_outcomes,
        conjunctive=False,
        implementation_indifferent=False,
        vote=agent.vote,
    )


def oracle_max_accept(instance: GenericInstance) -> OracleResult:
    """Enumerate every feasible decision and tally acceptance for each.

    The definitional solver the specialized routines are checked against.
    Ties break toward the canonically smallest (outcome, rule id) decision.
    """
    decisions = instance.feasible_decisions()
    if not decisions:
        raise ValidationError("no feasible decision exists")
    tally = []
    best = None
    for decision in decisions:
        count = sum(
            1 for agent in instance.agents if accepts(agent, decision, instance)
        )
        tally.append((decision, count))
        if best is None or count > best[1]:
            best = (decision, count)
    return OracleResult(report=make_report(instance, best[0]), tally=tuple(tally))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def max_accept_absolute_disjunctivists(instance: GenericInstance) -> SolveReport:
    """Best feasible decision when every agent is absolute-disjunctive.

    For each feasible outcome, counts the agents satisfied by the outcome
    alone, then picks the feasible rule realizing it that wins over the
    most of the remaining agents.
    """
    _require(
        all(a.is_absolute_disjunctive() for a in instance.agents),
        "requires absolute-disjunctive agents only",
    )
    best = None  # (count, outcome, rule_id, RuleRef)
    for a in sorted(instance.feasible_outcomes):
        rules_a = sorted(
            (
                r
                for r in instance.rules
                if r.id in instance.feasible_rule_ids and r.value_at_profile == a
            ),
            key=lambda r: r.id,
        )
        if not rules_a:
            continue
        in_outcome = {i for i, ag in enumerate(instance.agents) if a in ag.outcomes}
        best_rule = None  # (marginal, RuleRef)
        for r in rules_a:
            marginal = sum(
                1
                for i, ag in enumerate(instance.agents)
                if i not in in_outcome and r.id in ag.rule_ids
            )
            if best_rule is None or marginal > best_rule[0]:
                best_rule = (marginal, r)
        total = len(in_outcome) + best_rule[0]
        key = (-total, a, best_rule[1].id)
        if best is None or key < best[0]:
            best = (key, best_rule[1], a)
    if best is None:
        raise ValidationError("no feasible decision exists")
    return make_report(instance, Decision(rule=best[1], outcome=best[2]))


def max_accept_all_types(instance: GenericInstance) -> SolveReport:
    """Best feasible decision for any mix of agent types.

    Replaces each agent with an equivalent absolute disjunctivist and
    defers to the specialized solver; the returned report is computed
    against the original agents (the counts coincide).
    """
    substituted = GenericInstance(
        outcomes=instance.outcomes,
        rules=instance.rules,
        feasible_outcomes=instance.feasible_outcomes,
        feasible_rule_ids=instance.feasible_rule_ids,
        agents=tuple(
            substitute_absolute_disjunctivist(a, instance) for a in instance.agents
        ),
    )
    chosen = max_accept_absolute_disjunctivists(substituted).decision
    return make_report(instance, chosen)


def max_accept_consequentialists(instance: GenericInstance) -> SolveReport:
    """Approval voting over the feasible outcomes realized by some feasible rule."""
    _require(
        all(
            not a.conjunctive and not a.rule_ids for a in instance.agents
        ),
        "requires consequentialist agents only (disjunctive, empty rule sets)",
    )
    decisions = instance.feasible_decisions()
    realizable = sorted({d.outcome for d in decisions})
    scores = {
        a: sum(1 for ag in instance.agents if a in ag.outcomes) for a in realizable
    }
    top = max(scores.values())
    if top == 0:
        # No agent's acceptable outcome is realizable; any feasible decision
        # does equally badly, so return the canonical first one.
        return make_report(instance, decisions[0])
    best_outcome = min(a for a in realizable if scores[a] == top)
    chosen = next(d for d in decisions if d.outcome == best_outcome)
    return make_report(instance, chosen)


def max_accept_absolute_proceduralists(instance: GenericInstance) -> SolveReport:
    """Best feasible decision when agents care only about the rule used."""
    _require(
        all(
            a.is_absolute_disjunctive() and not a.outcomes for a in instance.agents
        ),
        "requires absolute-proceduralist agents only (disjunctive, empty outcome sets)",
    )
    decisions = instance.feasible_decisions()
    mentioned = set().union(*(a.rule_ids for a in instance.agents))
    candidates = [d for d in decisions if d.rule.id in mentioned] or decisions
    return _best_by_rule_membership(
        instance, candidates, [a.rule_ids for a in instance.agents]
    )


def max_accept_absolute_conjunctivists(instance: GenericInstance) -> SolveReport:
    """Best feasible decision when every agent is absolute-conjunctive.

    Each agent's rule set is filtered to the rules realizing an outcome the
    agent finds acceptable, after which rule membership alone decides.
    """
    _require(
        all(
            a.conjunctive and not a.implementation_indifferent for a in instance.agents
        ),
        "requires absolute-conjunctive agents only",
    )
    values = instance.rule_value
    filtered = [
        frozenset(rid for rid in a.rule_ids if values[rid] in a.outcomes)
        for a in instance.agents
    ]
    return _best_by_rule_membership(instance, instance.feasible_decisions(), filtered)


def _best_by_rule_membership(instance, decisions, rule_sets):
    best = None
    for d in decisions:
        count = sum(1 for rs in rule_sets if d.rule.id in rs)
        if best is None or count > best[1]:
            best = (d, count)
    if best is None:
        raise ValidationError("no feasible decision exists")
    return make_report(instance, best[0])
