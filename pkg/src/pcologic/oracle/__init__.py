"""Bounded model enumeration, validity checking and axiom soundness harness."""

from .enumeration import (
    EnumerationBudget,
    count_models,
    enumerate_models,
    estimate_models,
    law_families,
    nonempty_models,
)
from .report import AxiomCheckResult, run_axiom_check
from .rules import RULE_IDS, RuleReport, check_rule_soundness
from .sampling import FormulaSampler
from .schemas import SCHEMA_IDS, instantiate_schema, make_instance
from .validity import Verdict, check_entailment, check_validity

__all__ = [
    "AxiomCheckResult",
    "RULE_IDS",
    "RuleReport",
    "SCHEMA_IDS",
    "check_rule_soundness",
    "instantiate_schema",
    "make_instance",
    "run_axiom_check",
    "EnumerationBudget",
    "FormulaSampler",
    "Verdict",
    "check_entailment",
    "check_validity",
    "count_models",
    "enumerate_models",
    "estimate_models",
    "law_families",
    "nonempty_models",
]
