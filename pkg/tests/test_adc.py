"""Binary-choice mechanisms: threshold arithmetic and oracle equivalence."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from acceptmax.adc import (
    OUTCOMES,
    PROPOSAL,
    STATUS_QUO,
    AdcAgent,
    AdcInstance,
    adc_absolute_disjunctivists,
    adc_consequentialists,
    adc_ii_conjunctivists,
    adc_ii_disjunctivists,
    adc_oracle_max_count,
    adc_to_generic,
    delta_of,
    majority_threshold,
    supermajority_outcome,
    threshold_family,
    threshold_of,
)
from acceptmax.core import ValidationError, oracle_max_accept

from conftest import random_adc_instance


def agent(R=(), Y=(), conjunctive=False, ii=False):
    return AdcAgent(frozenset(R), frozenset(Y), conjunctive, ii)


class TestThresholds:
    def test_supermajority_outcome(self):
        assert supermajority_outcome(3, 3, 5) == PROPOSAL
        assert supermajority_outcome(5, 4, 5) == STATUS_QUO
        assert supermajority_outcome(4, 4, 5) == PROPOSAL

    def test_supermajority_outcome_range_checks(self):
        with pytest.raises(ValidationError):
            supermajority_outcome(0, 2, 5)
        with pytest.raises(ValidationError):
            supermajority_outcome(6, 2, 5)
        with pytest.raises(ValidationError):
            supermajority_outcome(3, 6, 5)

    @pytest.mark.parametrize("n", range(2, 12))
    def test_family_size(self, n):
        assert len(threshold_family(n)) == (n + 1) // 2
        assert min(threshold_family(n)) == majority_threshold(n)
        assert max(threshold_family(n)) == n

    @pytest.mark.parametrize("n", range(2, 10))
    def test_delta_round_trip(self, n):
        for t in range(1, n + 1):
            assert threshold_of(delta_of(t, n), n) == t

    def test_common_fractional_thresholds(self):
        assert threshold_of(Fraction(1, 2), 3) == 2
        assert threshold_of(Fraction(2, 3), 3) == 3
        assert threshold_of(Fraction(1, 2), 4) == 3

    @pytest.mark.parametrize("n", range(2, 10))
    def test_threshold_delta_consistency(self, n):
        # t selects p exactly when strictly more than delta(t) * n agents back p.
        for t in range(1, n + 1):
            for v in range(n + 1):
                expected = PROPOSAL if v > delta_of(t, n) * n else STATUS_QUO
                assert supermajority_outcome(t, v, n) == expected

    def test_threshold_of_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            threshold_of(Fraction(1), 3)
        with pytest.raises(ValidationError):
            threshold_of(Fraction(-1, 2), 3)


class TestInstanceValidation:
    def test_non_ii_agent_needs_family_thresholds(self):
        with pytest.raises(ValidationError):
            AdcInstance(("p", "p", "r"), (agent(R={1}),) * 3)

    def test_ii_agent_may_reference_sub_majority(self):
        inst = AdcInstance(("p", "p", "r"), (agent(R={1}, ii=True),) * 3)
        assert inst.votes_p == 2

    def test_realizable_outcomes(self):
        inst = AdcInstance(("p", "p", "r"), (agent(),) * 3)
        assert inst.realizable_outcomes() == {"p", "r"}
        unanimous = AdcInstance(("p", "p", "p"), (agent(),) * 3)
        assert unanimous.realizable_outcomes() == {"p"}


class TestConsequentialists:
    def test_unanimous_p(self):
        inst = AdcInstance(("p", "p", "p"), (agent(Y={"p"}),) * 3)
        report = adc_consequentialists(inst)
        assert report.decision.outcome == PROPOSAL
        assert report.acceptance_count == 3

    def test_majority_p(self):
        agents = (agent(Y={"p"}), agent(Y={"p"}), agent(Y={"r"}))
        report = adc_consequentialists(AdcInstance(("p", "p", "r"), agents))
        assert report.decision.rule.id == "t2"
        assert report.decision.outcome == PROPOSAL
        assert report.acceptance_count == 2

    def test_minority_p_forces_status_quo(self):
        agents = (agent(Y={"p"}), agent(Y={"r"}), agent(Y={"r"}))
        report = adc_consequentialists(AdcInstance(("p", "r", "r"), agents))
        assert report.decision.outcome == STATUS_QUO

    def test_tie_keeps_status_quo(self):
        agents = (agent(Y={"p"}), agent(Y={"p"}), agent(Y={"r"}), agent(Y={"r"}))
        report = adc_consequentialists(AdcInstance(("p", "p", "p", "r"), agents))
        assert report.decision.outcome == STATUS_QUO
        assert report.acceptance_count == 2


class TestAbsoluteDisjunctivists:
    def test_worked_example(self):
        agents = (agent(Y={"p"}, R={2}), agent(R={3}), agent(Y={"r"}))
        report = adc_absolute_disjunctivists(AdcInstance(("p", "p", "r"), agents))
        assert report.decision.rule.id == "t3"
        assert report.decision.outcome == STATUS_QUO
        assert report.acceptance_count == 2

    def test_unanimous_p_forces_proposal(self):
        agents = (agent(Y={"r"}, R={3, 4}), agent(Y={"r"}, R={3}), agent(Y={"r"}),
                  agent(Y={"r"}))
        inst = AdcInstance(("p",) * 4, agents)
        report = adc_absolute_disjunctivists(inst)
        assert report.decision.outcome == PROPOSAL
        # Only rule-based acceptance is possible; t3 sits in two rule sets.
        assert report.decision.rule.id == "t3"
        assert report.acceptance_count == 2 == adc_oracle_max_count(inst)

    def test_all_majority_rule(self):
        agents = (agent(R={2}),) * 3
        report = adc_absolute_disjunctivists(AdcInstance(("p", "p", "r"), agents))
        assert report.decision.rule.id == "t2"
        assert report.acceptance_count == 3


class TestIiDisjunctivists:
    def test_worked_example_tie_keeps_status_quo(self):
        agents = (
            agent(Y={"p"}, R={threshold_of(Fraction(1, 2), 3)}, ii=True),
            agent(Y={"p"}, R={threshold_of(Fraction(2, 3), 3)}, ii=True),
            agent(Y={"r"}, R={threshold_of(Fraction(2, 3), 3)}, ii=True),
        )
        inst = AdcInstance(("p", "p", "r"), agents)
        report = adc_ii_disjunctivists(inst)
        assert report.decision.outcome == STATUS_QUO
        assert report.acceptance_count == 2 == adc_oracle_max_count(inst)

    def test_everyone_accepts_both_outcomes(self):
        # One acceptable outcome plus a rule realizing the other one.
        agents = (
            agent(Y={"p"}, R={3}, ii=True),
            agent(Y={"r"}, R={2}, ii=True),
            agent(Y={"p"}, R={3}, ii=True),
        )
        report = adc_ii_disjunctivists(AdcInstance(("p", "p", "r"), agents))
        assert report.acceptance_count == 3

    def test_no_rules_degenerates_to_consequentialists(self):
        votes = ("p", "p", "r")
        agents = tuple(agent(Y={v}, ii=True) for v in votes)
        report = adc_ii_disjunctivists(AdcInstance(votes, agents))
        conseq = adc_consequentialists(AdcInstance(votes, agents))
        assert report.acceptance_count == conseq.acceptance_count


class TestIiConjunctivists:
    def test_worked_example_matches_oracle(self):
        agents = (
            agent(Y={"p"}, R={2}, conjunctive=True, ii=True),
            agent(Y={"r"}, R={3}, conjunctive=True, ii=True),
            agent(Y={"p"}, R={2}, conjunctive=True, ii=True),
        )
        inst = AdcInstance(("p", "p", "r"), agents)
        report = adc_ii_conjunctivists(inst)
        assert report.acceptance_count == adc_oracle_max_count(inst) == 2
        assert report.decision.outcome == PROPOSAL

    def test_both_conjuncts_required(self):
        inst = AdcInstance(
            ("p", "p", "r"),
            (agent(Y={"r"}, R={3}, conjunctive=True, ii=True),
             agent(Y={"r"}, R={2}, conjunctive=True, ii=True),  # rule realizes p only
             agent(R={3}, conjunctive=True, ii=True)),  # empty outcome set
        )
        report = adc_ii_conjunctivists(inst)
        assert report.decision.outcome == STATUS_QUO
        assert report.accepted_by == {0}

    def test_type_preconditions(self):
        inst = AdcInstance(("p", "r"), (agent(Y={"p"}), agent(Y={"r"})))
        for mech in (adc_ii_disjunctivists, adc_ii_conjunctivists,
                     adc_absolute_disjunctivists):
            with pytest.raises(ValidationError):
                mech(AdcInstance(("p", "r"), (agent(Y={"p"}, conjunctive=True),) * 2))
        assert adc_consequentialists(inst).acceptance_count >= 1


class TestBridge:
    def test_rule_values(self):
        inst = AdcInstance(("p", "p", "r"), (agent(),) * 3)
        generic = adc_to_generic(inst)
        assert generic.rule_value == {"t1": "p", "t2": "p", "t3": "r"}
        assert generic.feasible_rule_ids == {"t2", "t3"}

    def test_family_size_four_agents(self):
        inst = AdcInstance(("p", "p", "r", "r"), (agent(),) * 4)
        assert sorted(adc_to_generic(inst).feasible_rule_ids) == ["t3", "t4"]

    def test_sub_majority_thresholds_stay_infeasible(self):
        inst = AdcInstance(("p", "p", "r"), (agent(R={1}, ii=True),) * 3)
        generic = adc_to_generic(inst)
        assert "t1" in generic.rule_value and "t1" not in generic.feasible_rule_ids


# ---------------------------------------------------------------------------
# Randomized oracle equivalence (the exhaustive version lives in the
# acceptance suite).

MECHANISMS = {
    "conseq": adc_consequentialists,
    "abs_disj": adc_absolute_disjunctivists,
    "ii_disj": adc_ii_disjunctivists,
    "ii_conj": adc_ii_conjunctivists,
}


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=0, max_value=10**9),
    st.integers(min_value=2, max_value=7),
    st.sampled_from(sorted(MECHANISMS)),
)
def test_mechanism_count_equals_oracle(seed, n, kind):
    inst = random_adc_instance(random.Random(seed), n, kind)
    report = MECHANISMS[kind](inst)
    fast = adc_oracle_max_count(inst)
    slow = oracle_max_accept(adc_to_generic(inst)).report.acceptance_count
    assert report.acceptance_count == fast == slow
    t = int(report.decision.rule.id.lstrip("t"))
    assert t in inst.feasible_thresholds
    assert report.decision.outcome == supermajority_outcome(t, inst.votes_p, n)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=0, max_value=10**9),
    st.integers(min_value=2, max_value=6),
    st.sampled_from(["abs_conj", "ii_conj", "ii_disj"]),
)
def test_bridge_oracle_agrees_with_fast_oracle(seed, n, kind):
    inst = random_adc_instance(random.Random(seed), n, kind)
    fast = adc_oracle_max_count(inst)
    slow = oracle_max_accept(adc_to_generic(inst)).report.acceptance_count
    assert fast == slow
