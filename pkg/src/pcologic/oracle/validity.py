"""Bounded validity and entailment checks over the enumerated model class.

A positive answer only means that no countermodel exists within the
budget; a countermodel is always a genuine refutation.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..formula import Formula, check_signature
from ..model import CausalMultiteam
from ..semantics import eval_pco
from .enumeration import EnumerationBudget, count_models, enumerate_models

__all__ = ["Verdict", "check_validity", "check_entailment", "first_countermodel"]


@dataclass(frozen=True)
class Verdict:
    holds: bool
    budget: EnumerationBudget
    models_checked: int
    countermodel: Optional[CausalMultiteam] = None
    index: Optional[int] = None
    countermodels: tuple[CausalMultiteam, ...] = field(default=(), repr=False)
    kind: str = "validity"

    @property
    def label(self) -> str:
        if not self.holds:
            return "counterexample"
        return "valid-on-budget" if self.kind == "validity" else "holds-on-budget"

    def __bool__(self):
        return self.holds

    def __str__(self):
        text = f"{self.label}: {self.models_checked} model(s) checked, {self.budget.describe()}"
        if self.index is not None:
            text += f"; first countermodel is model #{self.index}"
        return text


def _refutes(model, premises, phi) -> bool:
    return all(eval_pco(model, p) for p in premises) and not eval_pco(model, phi)


def _scan(budget, premises, phi, start, stop):
    for i, model in enumerate(enumerate_models(budget, start, stop), start):
        if _refutes(model, premises, phi):
            return i
    return None


def first_countermodel(budget: EnumerationBudget, premises: Sequence[Formula], phi: Formula,
                       *, workers: int = 1) -> Optional[int]:
    """Index of the first model satisfying every premise and falsifying ``phi``.

    With ``workers > 1`` disjoint index ranges are scanned in separate
    processes; the smallest index found wins, so the answer does not depend
    on ``workers``.
    """
    if workers <= 1:
        return _scan(budget, premises, phi, 0, None)
    total = count_models(budget)
    step = -(-total // workers)
    bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        found = pool.map(_scan, *zip(*[(budget, premises, phi, lo, hi) for lo, hi in bounds]))
        hits = [i for i in found if i is not None]
    return min(hits) if hits else None


def _verdict(budget, premises, phi, kind, all_countermodels, workers):
    sig = budget.signature
    for f in (*premises, phi):
        check_signature(f, sig)
    if all_countermodels:
        bad, index, n = [], None, 0
        for n, model in enumerate(enumerate_models(budget), 1):
            if _refutes(model, premises, phi):
                index = n - 1 if index is None else index
                bad.append(model)
        return Verdict(not bad, budget, n, bad[0] if bad else None, index, tuple(bad), kind)
    index = first_countermodel(budget, premises, phi, workers=workers)
    if index is None:
        return Verdict(True, budget, count_models(budget), kind=kind)
    model = next(enumerate_models(budget, index, index + 1))
    return Verdict(False, budget, index + 1, model, index, (model,), kind)


def check_validity(phi: Formula, budget: EnumerationBudget, *, all_countermodels: bool = False,
                   workers: int = 1) -> Verdict:
    """Is ``phi`` true on every model within the budget?"""
    return _verdict(budget, (), phi, "validity", all_countermodels, workers)


def check_entailment(premises: Sequence[Formula], phi: Formula, budget: EnumerationBudget, *,
                     all_countermodels: bool = False, workers: int = 1) -> Verdict:
    """Does every model within the budget that satisfies all premises satisfy ``phi``?"""
    return _verdict(budget, tuple(premises), phi, "entailment", all_countermodels, workers)
