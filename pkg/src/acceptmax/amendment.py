"""Choosing the supermajority threshold itself by a sequence of binary votes.

Agents have single-peaked preferences over the feasible thresholds, with
ideal threshold ``peak``. A proposal to raise the threshold from ``r`` to
``p`` is itself decided by the current rule applied to the induced binary
profile. An agent accepts an amendment decision when the winning threshold
is the one they voted for, or when their own ideal rule would have selected
the same winner on that profile.

The stable point of this process is the largest threshold ``t`` supported by
at least ``t - 1`` agents' peaks at or above it; single-step amendment jumps
there directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .adc import (
    PROPOSAL,
    STATUS_QUO,
    majority_threshold,
    supermajority_outcome,
    threshold_family,
)
from .core import ValidationError


class VotePolicy(str, enum.Enum):
    """How an agent whose peak lies strictly between two proposals votes.

    Single-peakedness does not pin this vote down for non-adjacent pairs;
    any of these policies is consistent with it.
    """

    NEARER = "nearer"  # nearer threshold wins; distance ties keep the status quo
    STATUS_QUO_BIASED = "status-quo"
    PROPOSAL_BIASED = "proposal"


@dataclass(frozen=True)
class AmendmentInstance:
    """Agent peaks, the threshold currently in force, and the vote policy."""

    peaks: tuple
    status_quo: int
    vote_policy: VotePolicy = VotePolicy.NEARER

    def __post_init__(self):
        n = len(self.peaks)
        if n == 0:
            raise ValidationError("instance has no agents")
        family = threshold_family(n)
        if any(p not in family for p in self.peaks):
            raise ValidationError("peak outside the feasible threshold family")
        if self.status_quo not in family:
            raise ValidationError("status quo outside the feasible threshold family")
        object.__setattr__(self, "vote_policy", VotePolicy(self.vote_policy))

    @cached_property
    def n(self) -> int:
        return len(self.peaks)


@dataclass(frozen=True)
class AmendmentStep:
    """One proposal: thresholds on the ballot, induced votes, and who accepted."""

    status_quo: int
    proposal: int
    votes: tuple  # "r"/"p" per agent
    outcome: int  # winning threshold
    accepted_by: frozenset


@dataclass(frozen=True)
class AmendmentTrace:
    steps: tuple
    final_rule: int  # threshold of the rule that decided the final step
    final_outcome: int


@dataclass(frozen=True)
class OneStepReport:
    """Direct amendment to the stable threshold, or no amendment at all.

    ``votes`` and ``accepted_by`` are None when no vote takes place
    (the status quo is already at or above the stable threshold).
    """

    stable: int
    rule: int
    outcome: int
    votes: tuple | None
    accepted_by: frozenset | None


def induce_profile(peaks, r: int, p: int, policy: VotePolicy = VotePolicy.NEARER):
    """Votes between thresholds ``r`` (status quo) and ``p`` under single-peakedness."""
    if r == p:
        raise ValidationError("status quo and proposal must differ")
    policy = VotePolicy(policy)
    lo, hi = min(r, p), max(r, p)
    votes = []
    for peak in peaks:
        if peak <= lo:
            choice = lo
        elif peak >= hi:
            choice = hi
        elif policy is VotePolicy.STATUS_QUO_BIASED:
            choice = r
        elif policy is VotePolicy.PROPOSAL_BIASED:
            choice = p
        else:
            d_r, d_p = abs(peak - r), abs(peak - p)
            choice = r if d_r <= d_p else p
        votes.append(STATUS_QUO if choice == r else PROPOSAL)
    return tuple(votes)


def step_accepted_by(peaks, votes, r: int, p: int, winner: int) -> frozenset:
    """Agents accepting the amendment decision with winning threshold ``winner``.

    An agent accepts when they voted for the winner, or when the rule at
    their own peak would have selected the winner on the same profile.
    """
    n = len(peaks)
    votes_p = sum(1 for v in votes if v == PROPOSAL)
    winner_label = PROPOSAL if winner == p else STATUS_QUO
    accepted = set()
    for i, (peak, vote) in enumerate(zip(peaks, votes)):
        if vote == winner_label:
            accepted.add(i)
        elif supermajority_outcome(peak, votes_p, n) == winner_label:
            accepted.add(i)
    return frozenset(accepted)


def h_threshold(peaks, n: int) -> int:
    """Largest threshold ``t`` with at least ``t - 1`` peaks at or above it.

    The simple majority threshold always qualifies, so the value exists.
    """
    best = majority_threshold(n)
    for t in threshold_family(n):
        if sum(1 for peak in peaks if peak >= t) >= t - 1:
            best = t
    return best


def amend_iterative(instance: AmendmentInstance) -> AmendmentTrace:
    """Raise the threshold one notch at a time until a proposal fails.

    Each proposal ``r + 1`` is decided by the incumbent rule ``r`` on the
    induced profile; the process stops at the first failed proposal or at
    unanimity, and the last vote's decision is the result.
    """
    n = instance.n
    r = instance.status_quo
    steps = []
    final_rule, final_outcome = r, r
    while r < n:
        p = r + 1
        votes = induce_profile(instance.peaks, r, p, instance.vote_policy)
        votes_p = sum(1 for v in votes if v == PROPOSAL)
        winner = p if supermajority_outcome(r, votes_p, n) == PROPOSAL else r
        steps.append(
            AmendmentStep(
                status_quo=r,
                proposal=p,
                votes=votes,
                outcome=winner,
                accepted_by=step_accepted_by(instance.peaks, votes, r, p, winner),
            )
        )
        final_rule, final_outcome = r, winner
        if winner == r:
            break
        r = p
    return AmendmentTrace(
        steps=tuple(steps), final_rule=final_rule, final_outcome=final_outcome
    )


def amend_one_step(instance: AmendmentInstance) -> OneStepReport:
    """Put the stable threshold up against the status quo in a single vote."""
    n = instance.n
    stable = h_threshold(instance.peaks, n)
    r = instance.status_quo
    if r >= stable:
        return OneStepReport(
            stable=stable, rule=r, outcome=r, votes=None, accepted_by=None
        )
    votes = induce_profile(instance.peaks, r, stable, instance.vote_policy)
    votes_p = sum(1 for v in votes if v == PROPOSAL)
    winner = stable if supermajority_outcome(r, votes_p, n) == PROPOSAL else r
    accepted = step_accepted_by(instance.peaks, votes, r, stable, winner)
    return OneStepReport(
        stable=stable, rule=r, outcome=winner, votes=votes, accepted_by=accepted
    )


def check_universal_acceptance(trace: AmendmentTrace, instance: AmendmentInstance) -> bool:
    """True when every step's decision was accepted by all agents."""
    return all(len(step.accepted_by) == instance.n for step in trace.steps)
