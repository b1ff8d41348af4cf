"""Soundness checks for the finitary inference rules.

MP is checked as truth preservation in every enumerated model.  The other
rules are checked as validity preservation: premises are sampled, kept only
when valid on the budget, and the conclusion must then be valid on the
budget too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .. import formula as F
from ..errors import FormulaError, UnknownRule
from ..formula import GE, GT, And, Cf, Formula, GOr, ProbCmp, ProbConst, SelImp
from ..model import CausalMultiteam
from ..normal_form import normal_form
from ..semantics import eval_pco
from .enumeration import EnumerationBudget, enumerate_models
from .sampling import FormulaSampler
from .validity import check_validity

RULE_IDS = ("MP", "Rep", "Mon⊃", "→to⊃", "Mon▷")

_ALIASES = {"MonSel": "Mon⊃", "Mon=>": "Mon⊃", "ToSel": "→to⊃", "->to=>": "→to⊃",
            "MonCf": "Mon▷", "Mon[]": "Mon▷"}


def canonical_rule(rule_id: str) -> str:
    rid = _ALIASES.get(rule_id, rule_id)
    if rid not in RULE_IDS:
        raise UnknownRule(f"unknown rule {rule_id!r}")
    return rid


@dataclass(frozen=True)
class Violation:
    premises: tuple[Formula, ...]
    conclusion: Formula
    countermodel: CausalMultiteam


@dataclass
class RuleReport:
    rule: str
    seed: int
    budget: EnumerationBudget
    tested: int = 0
    skipped: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        status = "no violations" if self.ok else f"{len(self.violations)} violation(s)"
        return (f"RULE {self.rule}: {self.tested} premise set(s) tested, "
                f"{self.skipped} skipped, {status} (seed {self.seed}, {self.budget.describe()})")


def substitute(phi: Formula, old: Formula, new: Formula) -> Formula:
    """phi with every occurrence of ``old`` replaced by ``new``.

    Raises a FormulaError when the result is not well formed, for instance
    when a PCO formula would land inside Pr() or a ``=>`` antecedent.
    """
    if phi == old:
        return new
    if isinstance(phi, (And, GOr)):
        return type(phi)(substitute(phi.left, old, new), substitute(phi.right, old, new))
    if isinstance(phi, SelImp):
        return SelImp(substitute(phi.ante, old, new), substitute(phi.cons, old, new))
    if isinstance(phi, Cf):
        return Cf(phi.spec, substitute(phi.body, old, new))
    if isinstance(phi, ProbConst):
        return ProbConst(substitute(phi.arg, old, new), phi.cmp, phi.bound)
    if isinstance(phi, ProbCmp):
        return ProbCmp(substitute(phi.left, old, new), phi.cmp, substitute(phi.right, old, new))
    return phi


# -- candidate premises ----------------------------------------------------------


def _implications(s: FormulaSampler) -> Iterator[tuple[Formula, Formula]]:
    """Pairs (psi, chi) for which psi -> chi is often, but not always, valid."""
    sig, rng = s.sig, s.rng
    yield F.top(sig), F.top(sig)
    while True:
        psi = s.pco(rng.randint(0, 2))
        kind = rng.randrange(8)
        if kind == 0:
            yield psi, psi
        elif kind == 1:
            yield psi, GOr(psi, s.pco(rng.randint(0, 2)))
        elif kind == 2:
            yield And(psi, s.pco(rng.randint(0, 2))), psi
        elif kind == 3:
            alpha = s.co(rng.randint(0, 2))
            hi = s.rational()
            yield ProbConst(alpha, GE, hi), ProbConst(alpha, GE, s.rational(hi=hi))
        elif kind == 4:
            alpha, beta = s.co(rng.randint(0, 2)), s.co(rng.randint(0, 1))
            cmp = rng.choice((GE, GT))
            eps = s.rational()
            yield ProbConst(And(alpha, beta), cmp, eps), ProbConst(alpha, cmp, eps)
        elif kind == 5:
            yield psi, normal_form(psi)
        elif kind == 6:
            alpha = s.co(rng.randint(0, 2))
            yield alpha, ProbConst(alpha, GE, s.rational())
        else:
            yield psi, s.pco(rng.randint(0, 2))


def _co_implications(s: FormulaSampler) -> Iterator[tuple[Formula, Formula]]:
    """Pairs (alpha, psi) with CO alpha."""
    sig, rng = s.sig, s.rng
    yield F.top(sig), F.top(sig)
    while True:
        alpha = s.co(rng.randint(0, 2))
        kind = rng.randrange(6)
        if kind == 0:
            yield alpha, alpha
        elif kind == 1:
            yield alpha, GOr(alpha, s.pco(rng.randint(0, 2)))
        elif kind == 2:
            yield alpha, ProbConst(alpha, GE, s.rational())
        elif kind == 3:
            yield alpha, F.lor(sig, alpha, s.co(rng.randint(0, 2)))
        elif kind == 4:
            yield And(alpha, s.co(rng.randint(0, 2))), alpha
        else:
            yield alpha, s.pco(rng.randint(0, 2))


def _equivalences(s: FormulaSampler) -> Iterator[tuple[Formula, Formula]]:
    """Pairs (theta, theta') that are usually equivalent."""
    sig, rng = s.sig, s.rng
    while True:
        co = rng.random() < 0.5
        theta = s.co(rng.randint(1, 3)) if co else s.pco(rng.randint(1, 3))
        kind = rng.randrange(5)
        if kind == 0 and isinstance(theta, (And, GOr)):
            yield theta, type(theta)(theta.right, theta.left)
        elif kind == 1 and co:
            yield theta, F.neg(sig, F.neg(sig, theta))
        elif kind == 2:
            yield theta, F.neg_c(sig, F.neg_c(sig, theta))
        elif kind == 3 and not co:
            yield theta, normal_form(theta)
        else:
            yield theta, s.pco(rng.randint(0, 2)) if not co else s.co(rng.randint(0, 2))


def _contexts(s: FormulaSampler, theta: Formula) -> Formula:
    """A formula that contains ``theta`` and is often valid."""
    sig, rng = s.sig, s.rng
    other = s.pco(rng.randint(0, 2))
    choices = [F.implies(sig, theta, theta), F.implies(sig, theta, GOr(theta, other)),
               GOr(theta, F.neg_c(sig, theta))]
    if theta.co:
        choices += [F.pr_ge(theta, 0), F.iff(sig, theta, F.pr_eq(sig, theta, 1)),
                    SelImp(theta, theta)]
    return rng.choice(choices)


# -- checks ------------------------------------------------------------------------


def _valid(phi, budget):
    return check_validity(phi, budget)


def _modus_ponens(report, s, sample_budget, models):
    pairs = _implications(s)
    for _ in range(sample_budget):
        psi, chi = next(pairs)
        imp = F.implies(s.sig, psi, chi)
        report.tested += 1
        for model in models:
            if eval_pco(model, psi) and eval_pco(model, imp) and not eval_pco(model, chi):
                report.violations.append(Violation((psi, imp), chi, model))
                break


def _validity_rule(report, s, sample_budget, budget, premises_and_conclusion, max_attempts):
    attempts = 0
    while report.tested < sample_budget and attempts < max_attempts:
        attempts += 1
        try:
            premises, conclusion = premises_and_conclusion()
        except FormulaError:
            report.skipped += 1
            continue
        if not all(_valid(p, budget) for p in premises):
            report.skipped += 1
            continue
        report.tested += 1
        verdict = _valid(conclusion, budget)
        if not verdict:
            report.violations.append(Violation(premises, conclusion, verdict.countermodel))


def check_rule_soundness(rule_id: str, sample_budget: int, budget: EnumerationBudget, *,
                         seed: int = 0, max_attempts: Optional[int] = None) -> RuleReport:
    """Sample premises for a rule and report every case where soundness fails."""
    rule = canonical_rule(rule_id)
    s = FormulaSampler(budget.signature, seed)
    sig, rng = s.sig, s.rng
    report = RuleReport(rule, seed, budget)
    attempts = max_attempts or 40 * sample_budget

    if rule == "MP":
        _modus_ponens(report, s, sample_budget, list(enumerate_models(budget)))
        return report

    if rule == "Rep":
        pairs = _equivalences(s)

        def step():
            theta, theta2 = next(pairs)
            phi = _contexts(s, theta)
            return (phi, F.iff(sig, theta, theta2)), substitute(phi, theta, theta2)
    elif rule == "Mon⊃":
        pairs = _implications(s)

        def step():
            psi, chi = next(pairs)
            alpha = s.co(rng.randint(0, 2))
            return ((F.implies(sig, psi, chi),),
                    F.implies(sig, SelImp(alpha, psi), SelImp(alpha, chi)))
    elif rule == "→to⊃":
        pairs = _co_implications(s)

        def step():
            alpha, psi = next(pairs)
            return (F.implies(sig, alpha, psi),), SelImp(alpha, psi)
    else:
        pairs = _implications(s)

        def step():
            psi, chi = next(pairs)
            spec = s.spec()
            return ((F.implies(sig, psi, chi),),
                    F.implies(sig, Cf(spec, psi), Cf(spec, chi)))

    _validity_rule(report, s, sample_budget, budget, step, attempts)
    return report
