"""Canonical causal multiteams built from per-assignment rational weights.

An atomic description assigns every full assignment a weight; the
canonical model holds ``weight * d`` copies of each assignment, where ``d``
is the least common denominator of the weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping

from .errors import EmptyModel, SupportIncompatible, WeightsNotNormalized
from .formula import Formula, require_co, tuple_literal
from .model import CausalMultiteam, FunctionComponent, Multiteam, Row, Signature
from .semantics import eval_co_at, prob

__all__ = [
    "AtomicDescription",
    "CanonicalReport",
    "build_canonical",
    "extract_description",
    "check_canonical_properties",
    "assignment_formula",
]


@dataclass(frozen=True)
class AtomicDescription:
    """Weights on full assignments plus the laws of the endogenous variables.

    Assignments missing from ``weights`` have weight zero.
    """

    laws: FunctionComponent
    weights: Mapping[Row, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        sig = self.laws.signature
        clean = {}
        for row, w in dict(self.weights).items():
            row = sig.row(row)
            clean[row] = clean.get(row, Fraction(0)) + Fraction(w)
        object.__setattr__(self, "weights", clean)

    @property
    def signature(self) -> Signature:
        return self.laws.signature

    @property
    def endogenous(self) -> frozenset[str]:
        return self.laws.endogenous

    @property
    def tables(self):
        return self.laws.tables

    @property
    def support(self) -> dict[Row, Fraction]:
        return {row: w for row, w in self.weights.items() if w}

    def validate(self) -> None:
        for row, w in self.weights.items():
            if not 0 <= w <= 1:
                raise WeightsNotNormalized(f"weight {w} of {row} is outside [0, 1]")
        total = sum(self.weights.values(), Fraction(0))
        if total != 1:
            raise WeightsNotNormalized(f"weights sum to {total}, not 1")
        for row in self.support:
            if not self.laws.compatible(row):
                raise SupportIncompatible(f"assignment {row} has positive weight "
                                          "but does not satisfy the laws")

    def __eq__(self, other):
        if not isinstance(other, AtomicDescription):
            return NotImplemented
        return self.laws == other.laws and self.support == other.support

    def __hash__(self):
        return hash((self.laws, frozenset(self.support.items())))


def common_denominator(weights: Iterable[Fraction]) -> int:
    return math.lcm(*(Fraction(w).denominator for w in weights)) if weights else 1


def build_canonical(desc: AtomicDescription) -> CausalMultiteam:
    """m_i = weight_i * d copies of each supported assignment, d the least common denominator."""
    desc.validate()
    support = desc.support
    d = common_denominator(list(support.values()))
    counts = {row: int(w * d) for row, w in support.items()}
    return CausalMultiteam(Multiteam(desc.signature, counts), desc.laws)


def extract_description(model: CausalMultiteam) -> AtomicDescription:
    """Relative frequencies of the rows of a nonempty model, with its laws."""
    if model.empty:
        raise EmptyModel("the empty multiteam has no atomic description")
    n = len(model)
    return AtomicDescription(model.laws, {row: Fraction(k, n) for row, k in model.team.items})


def assignment_formula(sig: Signature, row: Row) -> Formula:
    """The conjunction of literals fixing every variable to its value in ``row``."""
    return tuple_literal(sig.variables, row)


# -- property report ------------------------------------------------------------

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass(frozen=True)
class CheckItem:
    number: int
    name: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class CanonicalReport:
    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.status != FAIL for item in self.items)

    @property
    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if item.status == FAIL]

    def status(self, number: int) -> str:
        return next(item.status for item in self.items if item.number == number)

    def __str__(self):
        return "\n".join(
            f"{item.number}. {item.name}: {item.status}" + (f" ({item.detail})" if item.detail else "")
            for item in self.items
        )


def _brute_parents(sig, var, table):
    """Non-dummy arguments found by comparing every pair of table entries."""
    others = sig.others(var)
    found = set()
    entries = list(table.items())
    for a, out_a in entries:
        for b, out_b in entries:
            diff = [i for i in range(len(others)) if a[i] != b[i]]
            if len(diff) == 1 and out_a != out_b:
                found.add(others[diff[0]])
    return found


def check_canonical_properties(model: CausalMultiteam,
                               betas: Iterable[Formula] = ()) -> CanonicalReport:
    """Recheck the defining properties of a canonical model; failures are reported, not raised."""
    sig, laws = model.signature, model.laws
    items = []

    bad = [
        (row, v) for row in model.team.counts for v in laws.endogenous
        if laws.tables[v][tuple(row[sig.index(w)] for w in sig.others(v))] != row[sig.index(v)]
    ]
    items.append(CheckItem(1, "rows satisfy the laws", FAIL if bad else PASS,
                           f"{bad[0][0]} breaks the law for {bad[0][1]}" if bad else ""))

    graph = {v: _brute_parents(sig, v, laws.tables[v]) for v in laws.endogenous}
    try:
        tuple(TopologicalSorter(graph).static_order())
        items.append(CheckItem(2, "causal graph is acyclic", PASS))
    except CycleError as exc:
        items.append(CheckItem(2, "causal graph is acyclic", FAIL, f"cycle {exc.args[1]}"))

    names = ("weights sum to 1", "team size is a common denominator of the weights",
             "each assignment formula has probability equal to its weight",
             "probability of a formula is the weight of its satisfying assignments")
    if model.empty:
        items += [CheckItem(n, name, NA, "empty model") for n, name in zip(range(3, 7), names)]
        return CanonicalReport(tuple(items))

    desc = extract_description(model)
    weights = desc.support
    total = sum(weights.values(), Fraction(0))
    items.append(CheckItem(3, names[0], PASS if total == 1 else FAIL, f"sum {total}"))

    n = len(model)
    d = common_denominator(list(weights.values()))
    scaled_ok = n % d == 0 and all(w * n == model.team.counts[row] for row, w in weights.items())
    items.append(CheckItem(4, names[1], PASS if scaled_ok else FAIL,
                           f"|T| = {n}, least common denominator {d}"))

    off = [row for row, w in weights.items() if prob(model, assignment_formula(sig, row)) != w]
    items.append(CheckItem(5, names[2], FAIL if off else PASS,
                           f"mismatch at {off[0]}" if off else ""))

    wrong = []
    for beta in betas:
        require_co(beta)
        expected = sum((w for row, w in weights.items() if eval_co_at(row, laws, beta)),
                       Fraction(0))
        if prob(model, beta) != expected:
            wrong.append(beta)
    items.append(CheckItem(6, names[3], FAIL if wrong else PASS,
                           f"mismatch for {wrong[0]}" if wrong else ""))
    return CanonicalReport(tuple(items))
