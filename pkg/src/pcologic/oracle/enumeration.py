"""Exhaustive, deterministic enumeration of small causal multiteams.

Models are listed family by family: first the law families (by set of
endogenous variables, then by tables in lexicographic order), then for each
family every multiset of compatible assignments by size.  The stream is
restartable at any index.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional

from ..errors import BudgetTooLarge, CyclicLaws
from ..model import CausalMultiteam, FunctionComponent, Multiteam, Signature

#: Refuse to enumerate when the estimated number of models exceeds this.
DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class EnumerationBudget:
    signature: Signature
    max_rows: int
    law_filter: Optional[Callable[[FunctionComponent], bool]] = None
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.max_rows < 0:
            raise ValueError("max_rows must be nonnegative")

    def describe(self) -> str:
        ranges = ", ".join(f"{v}:{len(r)}" for v, r in zip(self.signature.variables,
                                                           self.signature.ranges))
        return f"signature ({ranges}), at most {self.max_rows} rows"


def _nonconstant_count(sig: Signature, var: str) -> int:
    inputs = math.prod(len(sig.range_of(w)) for w in sig.others(var))
    n = len(sig.range_of(var))
    return n ** inputs - n


def estimate_models(budget: EnumerationBudget) -> int:
    """An upper bound on the number of models, computed without enumerating."""
    sig = budget.signature
    families = math.prod(1 + _nonconstant_count(sig, v) for v in sig.variables)
    teams = math.comb(sig.n_assignments() + budget.max_rows, budget.max_rows)
    return families * teams


def _check_budget(budget: EnumerationBudget) -> None:
    estimate = estimate_models(budget)
    if estimate > budget.cap:
        raise BudgetTooLarge(estimate, budget.cap)


def _nonconstant_tables(sig: Signature, var: str) -> list[dict]:
    keys = list(itertools.product(*(sig.range_of(w) for w in sig.others(var))))
    return [dict(zip(keys, outs))
            for outs in itertools.product(sig.range_of(var), repeat=len(keys))
            if len(set(outs)) > 1]


@lru_cache(maxsize=64)
def law_families(sig: Signature) -> tuple[FunctionComponent, ...]:
    """Every recursive function component over ``sig``, in enumeration order."""
    tables = {v: _nonconstant_tables(sig, v) for v in sig.variables}
    out = []
    for k in range(len(sig) + 1):
        for endo in itertools.combinations(sig.variables, k):
            for choice in itertools.product(*(tables[v] for v in endo)):
                try:
                    out.append(FunctionComponent(sig, dict(zip(endo, choice))))
                except CyclicLaws:
                    continue
    return tuple(out)


@lru_cache(maxsize=4096)
def compatible_rows(laws: FunctionComponent) -> tuple[tuple, ...]:
    return tuple(row for row in laws.signature.assignments() if laws.compatible(row))


def _families(budget: EnumerationBudget):
    keep = budget.law_filter
    for laws in law_families(budget.signature):
        if keep is None or keep(laws):
            yield laws


def _team_count(n_rows: int, max_rows: int) -> int:
    return math.comb(n_rows + max_rows, max_rows)


def count_models(budget: EnumerationBudget) -> int:
    """The exact length of ``enumerate_models(budget)``."""
    _check_budget(budget)
    return sum(_team_count(len(compatible_rows(laws)), budget.max_rows)
               for laws in _families(budget))


def _teams(sig, laws, rows, max_rows):
    for size in range(max_rows + 1):
        for combo in itertools.combinations_with_replacement(rows, size):
            yield CausalMultiteam.unchecked(Multiteam._trusted(sig, dict(Counter(combo))), laws)


def enumerate_models(budget: EnumerationBudget, start: int = 0,
                     stop: Optional[int] = None) -> Iterator[CausalMultiteam]:
    """Yield the models with index in [start, stop), each exactly once overall."""
    _check_budget(budget)
    sig = budget.signature
    index = 0
    for laws in _families(budget):
        if stop is not None and index >= stop:
            return
        rows = compatible_rows(laws)
        n = _team_count(len(rows), budget.max_rows)
        if index + n <= start:
            index += n
            continue
        lo = max(start - index, 0)
        hi = n if stop is None else min(n, stop - index)
        yield from itertools.islice(_teams(sig, laws, rows, budget.max_rows), lo, hi)
        index += n


def nonempty_models(budget: EnumerationBudget) -> Iterator[CausalMultiteam]:
    return (m for m in enumerate_models(budget) if not m.empty)
