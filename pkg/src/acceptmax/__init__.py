"""Acceptance-maximizing collective decisions over (rule, outcome) pairs."""

from .core import (
    Decision,
    GenericInstance,
    OracleResult,
    RuleRef,
    SatisfyingSpec,
    SolveReport,
    ValidationError,
    accepts,
    make_report,
    max_accept_absolute_conjunctivists,
    max_accept_absolute_disjunctivists,
    max_accept_absolute_proceduralists,
    max_accept_all_types,
    max_accept_consequentialists,
    oracle_max_accept,
    substitute_absolute_disjunctivist,
)
from .adc import (
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
from .amendment import (
    AmendmentInstance,
    AmendmentTrace,
    OneStepReport,
    VotePolicy,
    amend_iterative,
    amend_one_step,
    check_universal_acceptance,
    h_threshold,
    induce_profile,
)
from .bounds import BoundsReport, CLASSES, table1_formula, verify_row, worst_case_rate

__version__ = "0.1.0"

__all__ = [
    "AdcAgent",
    "AdcInstance",
    "AmendmentInstance",
    "AmendmentTrace",
    "BoundsReport",
    "CLASSES",
    "Decision",
    "GenericInstance",
    "OneStepReport",
    "OracleResult",
    "RuleRef",
    "SatisfyingSpec",
    "SolveReport",
    "ValidationError",
    "VotePolicy",
    "accepts",
    "adc_absolute_disjunctivists",
    "adc_consequentialists",
    "adc_ii_conjunctivists",
    "adc_ii_disjunctivists",
    "adc_oracle_max_count",
    "adc_to_generic",
    "amend_iterative",
    "amend_one_step",
    "check_universal_acceptance",
    "delta_of",
    "h_threshold",
    "induce_profile",
    "majority_threshold",
    "make_report",
    "max_accept_absolute_conjunctivists",
    "max_accept_absolute_disjunctivists",
    "max_accept_absolute_proceduralists",
    "max_accept_all_types",
    "max_accept_consequentialists",
    "oracle_max_accept",
    "substitute_absolute_disjunctivist",
    "supermajority_outcome",
    "table1_formula",
    "threshold_family",
    "threshold_of",
    "verify_row",
    "worst_case_rate",
]
