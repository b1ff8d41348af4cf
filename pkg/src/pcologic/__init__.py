"""Causal multiteam semantics for probabilistic interventionist counterfactuals.

The package evaluates CO and PCO formulas on causal multiteams with exact
rational probabilities, rewrites formulas into a normal form, builds
canonical models from weighted descriptions and checks validity by
bounded exhaustive enumeration.
"""

from .canonical import (
    AtomicDescription,
    build_canonical,
    check_canonical_properties,
    extract_description,
)
from .errors import PcoError
from .formula import (
    And,
    Cf,
    Eq,
    Formula,
    GOr,
    Neq,
    ProbCmp,
    ProbConst,
    SelImp,
    build_aff,
    build_dc,
    build_end,
    build_phi_f,
    mk_defined,
    neg_c,
)
from .model import (
    CausalMultiteam,
    FunctionComponent,
    InterventionSpec,
    Multiteam,
    Signature,
    causal_graph,
    intervene,
    observe,
    parents,
    sub_multiteam,
    validate_model,
)
from .semantics import cond_prob, eval_co, eval_pco, prob

__all__ = [
    "AtomicDescription",
    "And",
    "CausalMultiteam",
    "Cf",
    "Eq",
    "Formula",
    "FunctionComponent",
    "GOr",
    "InterventionSpec",
    "Multiteam",
    "Neq",
    "PcoError",
    "ProbCmp",
    "ProbConst",
    "SelImp",
    "Signature",
    "build_aff",
    "build_canonical",
    "build_dc",
    "build_end",
    "build_phi_f",
    "causal_graph",
    "check_canonical_properties",
    "cond_prob",
    "eval_co",
    "eval_pco",
    "extract_description",
    "intervene",
    "mk_defined",
    "neg_c",
    "observe",
    "parents",
    "prob",
    "sub_multiteam",
    "validate_model",
]
