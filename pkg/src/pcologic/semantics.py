"""Truth of CO and PCO formulas on causal multiteams, with exact probabilities."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import EmptyModel
from .formula import (
    GE,
    And,
    Cf,
    Eq,
    Formula,
    GOr,
    Neq,
    ProbCmp,
    ProbConst,
    SelImp,
    check_signature,
    require_co,
)
from .model import CausalMultiteam, FunctionComponent, Row, intervene, observe

__all__ = ["eval_co_at", "eval_co", "prob", "eval_pco", "eval_clauses", "cond_prob", "models"]


@lru_cache(maxsize=1 << 20)
def _checked(phi: Formula, sig) -> Formula:
    return check_signature(phi, sig)


def eval_co_at(row: Row, laws: FunctionComponent, alpha: Formula) -> bool:
    """({s}, F) |= alpha for a single assignment s."""
    _checked(alpha, laws.signature)
    return _at(row, laws, alpha)


@lru_cache(maxsize=1 << 21)
def _at(row, laws, alpha):
    kind = type(alpha)
    if kind is Eq:
        return row[laws.signature.index(alpha.var)] == alpha.value
    if kind is Neq:
        return row[laws.signature.index(alpha.var)] != alpha.value
    if kind is And:
        return _at(row, laws, alpha.left) and _at(row, laws, alpha.right)
    if kind is SelImp:
        return not _at(row, laws, alpha.ante) or _at(row, laws, alpha.cons)
    if kind is Cf:
        if not alpha.spec.consistent:
            return True
        # same row-level map that ``intervene`` uses for whole multiteams
        image = laws.apply(alpha.spec, row)
        return _at(image, laws.restrict(alpha.spec.variables), alpha.body)
    raise TypeError(f"not a CO formula: {alpha!r}")


def eval_co(model: CausalMultiteam, alpha: Formula) -> bool:
    """T |= alpha for CO alpha, via flatness: every row must satisfy alpha."""
    require_co(alpha)
    _checked(alpha, model.signature)
    laws = model.laws
    return all(_at(row, laws, alpha) for row in model.team.counts)


def _count(model, alpha):
    laws = model.laws
    return sum(k for row, k in model.team.items if _at(row, laws, alpha))


def prob(model: CausalMultiteam, alpha: Formula) -> Fraction:
    """P_T(alpha): the weight of rows satisfying alpha, as an exact fraction."""
    require_co(alpha)
    _checked(alpha, model.signature)
    if model.empty:
        raise EmptyModel("probabilities are undefined on the empty multiteam")
    return Fraction(_count(model, alpha), len(model))


def _compare(a, cmp, b):
    return a >= b if cmp == GE else a > b


def eval_pco(model: CausalMultiteam, phi: Formula) -> bool:
    """T |= phi for any PCO formula (CO subformulas are checked row by row)."""
    _checked(phi, model.signature)
    return _eval(model, phi, True)


def eval_clauses(model: CausalMultiteam, phi: Formula) -> bool:
    """Like eval_pco but using only the team-level clauses, never flatness.

    Kept as an independent route for cross-checking ``eval_co``.
    """
    _checked(phi, model.signature)
    return _eval(model, phi, False)


models = eval_pco


@lru_cache(maxsize=1 << 20)
def _eval(model, phi, flat):
    if flat and phi.co:
        laws = model.laws
        return all(_at(row, laws, phi) for row in model.team.counts)
    kind = type(phi)
    if kind is Eq or kind is Neq:
        laws = model.laws
        return all(_at(row, laws, phi) for row in model.team.counts)
    if kind is ProbConst:
        if model.empty:
            return True
        p = Fraction(_count(model, phi.arg), len(model))
        return _compare(p, phi.cmp, phi.bound)
    if kind is ProbCmp:
        if model.empty:
            return True
        return _compare(_count(model, phi.left), phi.cmp, _count(model, phi.right))
    if kind is And:
        return _eval(model, phi.left, flat) and _eval(model, phi.right, flat)
    if kind is GOr:
        return _eval(model, phi.left, flat) or _eval(model, phi.right, flat)
    if kind is SelImp:
        if flat:
            sub = observe(model, phi.ante)
        else:
            sub = _observe_by_clauses(model, phi.ante)
        return _eval(sub, phi.cons, flat)
    if kind is Cf:
        if not phi.spec.consistent:
            return True
        return _eval(intervene(model, phi.spec), phi.body, flat)
    raise TypeError(f"not a formula: {phi!r}")


def _observe_by_clauses(model, alpha):
    keep = {}
    for row, k in model.team.items:
        single = model.with_team({row: 1})
        if _eval(single, alpha, False):
            keep[row] = k
    return model.with_team(keep)


def cond_prob(model: CausalMultiteam, alpha: Formula, gamma: Formula) -> Optional[Fraction]:
    """P_{T^gamma}(alpha), or None when no row satisfies gamma."""
    sub = observe(model, gamma)
    if sub.empty:
        return None
    return prob(sub, alpha)
