"""Shared builders for randomized and exhaustive test suites."""

from __future__ import annotations

import itertools
import random

from acceptmax.adc import OUTCOMES, PROPOSAL, AdcAgent, AdcInstance, threshold_family
from acceptmax.core import GenericInstance, RuleRef, SatisfyingSpec

OUTCOME_UNIVERSE = ("A", "B", "C")
TYPE_FLAGS = [
    (False, False),
    (True, False),
    (False, True),
    (True, True),
]


def random_generic_instance(rng: random.Random) -> GenericInstance:
    """A small random decision problem that always has a feasible decision."""
    outcomes = tuple(OUTCOME_UNIVERSE[: rng.randint(2, 3)])
    n_rules = rng.randint(1, 4)
    rules = tuple(
        RuleRef(f"r{i}", rng.choice(outcomes)) for i in range(n_rules)
    )
    while True:
        feasible_outcomes = frozenset(
            o for o in outcomes if rng.random() < 0.7
        ) or frozenset(outcomes)
        feasible_rule_ids = frozenset(
            r.id for r in rules if rng.random() < 0.7
        ) or frozenset(r.id for r in rules)
        if any(
            r.id in feasible_rule_ids and r.value_at_profile in feasible_outcomes
            for r in rules
        ):
            break
    agents = []
    for _ in range(rng.randint(1, 5)):
        conjunctive, ii = rng.choice(TYPE_FLAGS)
        agents.append(
            SatisfyingSpec(
                rule_ids=frozenset(r.id for r in rules if rng.random() < 0.4),
                outcomes=frozenset(o for o in outcomes if rng.random() < 0.4),
                conjunctive=conjunctive,
                implementation_indifferent=ii,
            )
        )
    return GenericInstance(
        outcomes=outcomes,
        rules=rules,
        feasible_outcomes=feasible_outcomes,
        feasible_rule_ids=feasible_rule_ids,
        agents=tuple(agents),
    )


def random_adc_instance(rng: random.Random, n: int, kind: str) -> AdcInstance:
    """A random binary-choice instance with homogeneous agents of one kind."""
    votes = tuple(rng.choice(OUTCOMES) for _ in range(n))
    family = list(threshold_family(n))
    agents = []
    for _ in range(n):
        outcomes = frozenset(o for o in OUTCOMES if rng.random() < 0.5)
        if kind == "conseq":
            agents.append(AdcAgent(frozenset(), outcomes, False, True))
            continue
        conjunctive = kind.endswith("conj")
        ii = kind.startswith("ii")
        pool = range(1, n + 1) if ii else family
        thresholds = frozenset(t for t in pool if rng.random() < 0.4)
        agents.append(AdcAgent(thresholds, outcomes, conjunctive, ii))
    return AdcInstance(votes=votes, agents=tuple(agents))


def vote_representatives(n: int):
    """One vote vector per proposal-vote count (acceptance only sees the count)."""
    for votes_p in range(n + 1):
        yield (PROPOSAL,) * votes_p + ("r",) * (n - votes_p)


def homogeneous_suite(n: int, options_for):
    """All instances over representative votes and agent-option multisets.

    ``options_for(votes_p, vote)`` returns the per-agent options; agents with
    equal votes are exchangeable, so multisets per vote group suffice.
    """
    feasible = frozenset(threshold_family(n))
    for votes in vote_representatives(n):
        votes_p = sum(1 for v in votes if v == PROPOSAL)
        opts_p = options_for(votes_p, "p")
        opts_r = options_for(votes_p, "r")
        if (votes_p > 0 and not opts_p) or (votes_p < n and not opts_r):
            continue
        for group_p in itertools.combinations_with_replacement(opts_p, votes_p):
            for group_r in itertools.combinations_with_replacement(
                opts_r, n - votes_p
            ):
                yield AdcInstance(votes, group_p + group_r, feasible)
