"""Binary status-quo-vs-proposal decisions under supermajority rule families.

Outcomes are ``"r"`` (keep the status quo) and ``"p"`` (adopt the proposal).
A supermajority rule with integer threshold ``t`` selects ``p`` exactly when
at least ``t`` agents vote for it. The feasible rule family for ``n`` agents
runs from simple majority, ``t = n // 2 + 1``, to unanimity, ``t = n``;
implementation-indifferent agents may additionally reference sub-majority
thresholds down to ``t = 1``, which can never be the implemented rule but
still matter for which outcomes they would have found acceptable.

Thresholds are kept as integers throughout so every comparison is exact;
the conventional fractional threshold of ``t`` is ``(t - 1) / n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .core import (
    Decision,
    GenericInstance,
    RuleRef,
    SatisfyingSpec,
    SolveReport,
    ValidationError,
)

STATUS_QUO = "r"
PROPOSAL = "p"
OUTCOMES = (PROPOSAL, STATUS_QUO)


def majority_threshold(n: int) -> int:
    return n // 2 + 1


def threshold_family(n: int) -> range:
    """The feasible supermajority thresholds: majority up to unanimity."""
    return range(majority_threshold(n), n + 1)


def delta_of(t: int, n: int) -> Fraction:
    """Display value of a threshold as a fraction of the electorate."""
    return Fraction(t - 1, n)


def threshold_of(delta, n: int) -> int:
    """Integer threshold of a fractional one: smallest winning vote count."""
    d = Fraction(delta)
    if not 0 <= d < 1:
        raise ValidationError(f"fractional threshold {d} outside [0, 1)")
    return int(d * n) + 1


def supermajority_outcome(t: int, votes_p: int, n: int) -> str:
    """Outcome selected by threshold ``t`` when ``votes_p`` agents back the proposal."""
    if not 1 <= t <= n:
        raise ValidationError(f"threshold {t} outside [1, {n}]")
    if not 0 <= votes_p <= n:
        raise ValidationError(f"vote count {votes_p} outside [0, {n}]")
    return PROPOSAL if votes_p >= t else STATUS_QUO


def rule_id(t: int) -> str:
    return f"t{t}"


@dataclass(frozen=True)
class AdcAgent:
    """One agent's acceptable thresholds and outcomes plus type flags."""

    thresholds: frozenset
    outcomes: frozenset
    conjunctive: bool = False
    implementation_indifferent: bool = False

    def realized(self, votes_p: int) -> frozenset:
        """Outcomes some acceptable threshold selects on the observed profile."""
        out = set()
        for t in self.thresholds:
            out.add(PROPOSAL if votes_p >= t else STATUS_QUO)
        return frozenset(out)


@dataclass(frozen=True)
class AdcInstance:
    """A binary-choice problem: the votes, the feasible thresholds, the agents."""

    votes: tuple
    agents: tuple
    feasible_thresholds: frozenset = None  # defaults to the full family

    def __post_init__(self):
        n = len(self.votes)
        if n == 0:
            raise ValidationError("instance has no votes")
        if any(v not in OUTCOMES for v in self.votes):
            raise ValidationError("votes must be 'r' or 'p'")
        if self.feasible_thresholds is None:
            object.__setattr__(
                self, "feasible_thresholds", frozenset(threshold_family(n))
            )
        family = set(threshold_family(n))
        if not self.feasible_thresholds or not set(self.feasible_thresholds) <= family:
            raise ValidationError("feasible thresholds must be a nonempty family subset")
        if len(self.agents) != n:
            raise ValidationError("agent count must match vote count")
        for idx, agent in enumerate(self.agents):
            if not agent.outcomes <= set(OUTCOMES):
                raise ValidationError(f"agent {idx} outcomes outside {{r, p}}")
            if any(not 1 <= t <= n for t in agent.thresholds):
                raise ValidationError(f"agent {idx} threshold outside [1, {n}]")
            if not agent.implementation_indifferent and not agent.thresholds <= family:
                # Sub-majority thresholds only ever matter counterfactually.
                raise ValidationError(
                    f"agent {idx} is not implementation-indifferent; "
                    "thresholds must be feasible-family members"
                )

    @cached_property
    def n(self) -> int:
        return len(self.votes)

    @cached_property
    def votes_p(self) -> int:
        return sum(1 for v in self.votes if v == PROPOSAL)

    def realizable_outcomes(self) -> frozenset:
        """Outcomes selected by at least one feasible threshold."""
        return frozenset(
            supermajority_outcome(t, self.votes_p, self.n)
            for t in self.feasible_thresholds
        )


def adc_accepts(agent: AdcAgent, t: int, outcome: str, votes_p: int) -> bool:
    """Fast acceptance predicate over threshold-encoded decisions."""
    outcome_ok = outcome in agent.outcomes
    if agent.implementation_indifferent:
        if outcome == PROPOSAL:
            rule_ok = any(s <= votes_p for s in agent.thresholds)
        else:
            rule_ok = any(s > votes_p for s in agent.thresholds)
    else:
        rule_ok = t in agent.thresholds
    if agent.conjunctive:
        return outcome_ok and rule_ok
    return outcome_ok or rule_ok


def adc_decisions(instance: AdcInstance) -> list:
    """Feasible (threshold, outcome) pairs in canonical (outcome, threshold) order."""
    pairs = [
        (t, supermajority_outcome(t, instance.votes_p, instance.n))
        for t in sorted(instance.feasible_thresholds)
    ]
    pairs.sort(key=lambda p: (p[1], p[0]))
    return pairs


def _adc_report(instance: AdcInstance, t: int) -> SolveReport:
    outcome = supermajority_outcome(t, instance.votes_p, instance.n)
    accepted = frozenset(
        i
        for i, agent in enumerate(instance.agents)
        if adc_accepts(agent, t, outcome, instance.votes_p)
    )
    return SolveReport(
        decision=Decision(rule=RuleRef(rule_id(t), outcome), outcome=outcome),
        accepted_by=accepted,
        acceptance_count=len(accepted),
        acceptance_rate=Fraction(len(accepted), instance.n),
    )


def adc_oracle_max_count(instance: AdcInstance) -> int:
    """Maximum acceptance count over feasible decisions, by direct tally."""
    votes_p = instance.votes_p
    best = 0
    for t, outcome in adc_decisions(instance):
        count = sum(
            1 for agent in instance.agents if adc_accepts(agent, t, outcome, votes_p)
        )
        if count > best:
            best = count
    return best


def canonical_threshold(instance: AdcInstance, outcome: str) -> int | None:
    """Canonical feasible threshold implementing an outcome, if any.

    Smallest feasible threshold that selects the proposal; largest feasible
    threshold that keeps the status quo.
    """
    votes_p = instance.votes_p
    candidates = [
        t
        for t in instance.feasible_thresholds
        if supermajority_outcome(t, votes_p, instance.n) == outcome
    ]
    if not candidates:
        return None
    return min(candidates) if outcome == PROPOSAL else max(candidates)


def adc_consequentialists(instance: AdcInstance) -> SolveReport:
    """Best feasible decision when agents care only about the outcome.

    Equivalent to approval voting between the two outcomes, restricted to
    the outcomes some feasible threshold actually selects; ties keep the
    status quo.
    """
    if any(a.conjunctive or a.thresholds for a in instance.agents):
        raise ValidationError("requires consequentialist agents only")
    backing = {
        outcome: sum(1 for a in instance.agents if outcome in a.outcomes)
        for outcome in OUTCOMES
    }
    t_r = canonical_threshold(instance, STATUS_QUO)
    t_p = canonical_threshold(instance, PROPOSAL)
    if t_r is None:
        chosen = t_p
    elif t_p is None or backing[STATUS_QUO] >= backing[PROPOSAL]:
        chosen = t_r
    else:
        chosen = t_p
    return _adc_report(instance, chosen)


def adc_absolute_disjunctivists(instance: AdcInstance) -> SolveReport:
    """Best feasible decision when agents are absolute disjunctivists.

    For each outcome, agents already satisfied by the outcome are banked and
    the feasible threshold selecting that outcome is chosen to win over the
    most remaining agents; the better of the two sides wins, ties keep the
    status quo.
    """
    if any(a.conjunctive or a.implementation_indifferent for a in instance.agents):
        raise ValidationError("requires absolute-disjunctive agents only")
    votes_p = instance.votes_p
    sides = {}
    for outcome in (STATUS_QUO, PROPOSAL):
        candidates = sorted(
            t
            for t in instance.feasible_thresholds
            if supermajority_outcome(t, votes_p, instance.n) == outcome
        )
        if not candidates:
            continue
        banked = {i for i, a in enumerate(instance.agents) if outcome in a.outcomes}
        best_t, best_marginal = None, -1
        for t in candidates:
            marginal = sum(
                1
                for i, a in enumerate(instance.agents)
                if i not in banked and t in a.thresholds
            )
            if marginal > best_marginal:
                best_t, best_marginal = t, marginal
        sides[outcome] = (len(banked) + best_marginal, best_t)
    if STATUS_QUO not in sides:
        chosen = sides[PROPOSAL][1]
    elif PROPOSAL not in sides or sides[STATUS_QUO][0] >= sides[PROPOSAL][0]:
        chosen = sides[STATUS_QUO][1]
    else:
        chosen = sides[PROPOSAL][1]
    return _adc_report(instance, chosen)


def _ii_side_counts(instance: AdcInstance, conjunctive: bool):
    """Per-outcome acceptance counts for implementation-indifferent agents.

    An agent's threshold set contributes through whether any member selects
    the outcome on the observed profile; the implemented rule is irrelevant.
    """
    votes_p = instance.votes_p
    n_r = n_p = 0
    for a in instance.agents:
        has_r_rule = any(t > votes_p for t in a.thresholds)
        has_p_rule = any(t <= votes_p for t in a.thresholds)
        if conjunctive:
            n_r += STATUS_QUO in a.outcomes and has_r_rule
            n_p += PROPOSAL in a.outcomes and has_p_rule
        else:
            n_r += STATUS_QUO in a.outcomes or has_r_rule
            n_p += PROPOSAL in a.outcomes or has_p_rule
    return n_r, n_p


def _adc_ii(instance: AdcInstance, conjunctive: bool) -> SolveReport:
    want = "conjunctive" if conjunctive else "disjunctive"
    if any(
        not a.implementation_indifferent or a.conjunctive != conjunctive
        for a in instance.agents
    ):
        raise ValidationError(
            f"requires implementation-indifferent {want} agents only"
        )
    n_r, n_p = _ii_side_counts(instance, conjunctive)
    t_r = canonical_threshold(instance, STATUS_QUO)
    t_p = canonical_threshold(instance, PROPOSAL)
    if t_r is None:
        chosen = t_p
    elif t_p is None or n_r >= n_p:
        chosen = t_r
    else:
        chosen = t_p
    return _adc_report(instance, chosen)


def adc_ii_disjunctivists(instance: AdcInstance) -> SolveReport:
    """Best feasible decision for implementation-indifferent disjunctivists."""
    return _adc_ii(instance, conjunctive=False)


def adc_ii_conjunctivists(instance: AdcInstance) -> SolveReport:
    """Best feasible decision for implementation-indifferent conjunctivists."""
    return _adc_ii(instance, conjunctive=True)


@lru_cache(maxsize=None)
def _rule_universe(n: int, votes_p: int) -> tuple:
    return tuple(
        RuleRef(rule_id(t), supermajority_outcome(t, votes_p, n))
        for t in range(1, n + 1)
    )


def adc_to_generic(instance: AdcInstance) -> GenericInstance:
    """Bridge to the generic model so the generic solvers apply unchanged.

    The rule universe covers every threshold an agent may reference,
    including sub-majority ones; only the instance's feasible family
    members are feasible rules.
    """
    n = instance.n
    agents = tuple(
        SatisfyingSpec(
            rule_ids=frozenset(rule_id(t) for t in a.thresholds),
            outcomes=a.outcomes,
            conjunctive=a.conjunctive,
            implementation_indifferent=a.implementation_indifferent,
            vote=instance.votes[i],
        )
        for i, a in enumerate(instance.agents)
    )
    return GenericInstance(
        outcomes=OUTCOMES,
        rules=_rule_universe(n, instance.votes_p),
        feasible_outcomes=frozenset(OUTCOMES),
        feasible_rule_ids=frozenset(rule_id(t) for t in instance.feasible_thresholds),
        agents=agents,
    )
