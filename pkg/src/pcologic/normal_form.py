"""Rewriting PCO formulas so that counterfactuals and selective implications
only have probability atoms (or, for ``=>``, counterfactuals) as consequents.

Rules apply one at a time at the outermost redex.  Counterfactual redexes
are cleared first, then selective-implication redexes.  Every step must
strictly decrease :func:`measure`; a violation raises AssertionError.

Only subformulas in *top position* are rewritten: those reached from the
root through ``&``, ``||``, the consequent of ``=>`` and the body of a
counterfactual.  Probability arguments and ``=>`` antecedents are CO
formulas and are left alone.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional

from .errors import NotInNormalForm
from .formula import (
    GE,
    LITERALS,
    PROB_ATOMS,
    And,
    Cf,
    Eq,
    Formula,
    GOr,
    ProbCmp,
    ProbConst,
    SelImp,
)
from .model import InterventionSpec

__all__ = [
    "normal_form",
    "rewrite_steps",
    "push_prob_inward",
    "is_normal_form",
    "measure",
    "Step",
]

Step = tuple  # (rule name, formula after the step, measure after the step)


# -- structure ---------------------------------------------------------------


def _top_nodes(phi: Formula) -> Iterator[Formula]:
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (And, GOr)):
            stack += (node.right, node.left)
        elif isinstance(node, SelImp):
            stack.append(node.cons)
        elif isinstance(node, Cf):
            stack.append(node.body)


def _weight(phi: Formula) -> int:
    """Number of top-position nodes in ``phi``."""
    return sum(1 for _ in _top_nodes(phi))


def measure(phi: Formula) -> tuple[int, int, int]:
    """(counterfactual load, selective-implication load, literal consequents).

    The load of a node is the number of top-position nodes below it, summed
    over all top-position counterfactuals (resp. selective implications).
    """
    cf_load = imp_load = literals = 0
    for node in _top_nodes(phi):
        if isinstance(node, Cf):
            cf_load += _weight(node.body)
            literals += isinstance(node.body, LITERALS)
        elif isinstance(node, SelImp):
            imp_load += _weight(node.cons)
            literals += isinstance(node.cons, LITERALS)
    return cf_load, imp_load, literals


def is_normal_form(phi: Formula) -> bool:
    """Every top-position counterfactual has a probability atom as its body, and
    every top-position ``=>`` has a probability atom or a counterfactual as its consequent."""
    for node in _top_nodes(phi):
        if isinstance(node, Cf) and not isinstance(node.body, PROB_ATOMS):
            return False
        if isinstance(node, SelImp) and not isinstance(node.cons, PROB_ATOMS + (Cf,)):
            return False
    return True


# -- rules ---------------------------------------------------------------------


def _trivially_true(spec: InterventionSpec) -> ProbConst:
    var, val = spec.pairs[0]
    return ProbConst(Cf([(var, val)], Eq(var, val)), GE, 0)


def _merge(outer: InterventionSpec, inner: InterventionSpec) -> InterventionSpec:
    overridden = set(inner.variables)
    kept = [(v, x) for v, x in outer.pairs if v not in overridden]
    return InterventionSpec(kept + list(inner.pairs))


def _cf_rule(node: Cf) -> Optional[tuple[str, Formula]]:
    spec, body = node.spec, node.body
    if not spec.consistent:
        return "vacuous", _trivially_true(spec)
    if isinstance(body, And):
        return "C1", And(Cf(spec, body.left), Cf(spec, body.right))
    if isinstance(body, GOr):
        return "C2", GOr(Cf(spec, body.left), Cf(spec, body.right))
    if isinstance(body, SelImp):
        return "C3", SelImp(Cf(spec, body.ante), Cf(spec, body.cons))
    if isinstance(body, Cf):
        return "C4", Cf(_merge(spec, body.spec), body.body)
    if isinstance(body, LITERALS):
        return "P1", Cf(spec, ProbConst(body, GE, 1))
    return None


def _imp_rule(node: SelImp) -> Optional[tuple[str, Formula]]:
    ante, cons = node.ante, node.cons
    if isinstance(cons, And):
        return "O5-and", And(SelImp(ante, cons.left), SelImp(ante, cons.right))
    if isinstance(cons, GOr):
        return "O5-gor", GOr(SelImp(ante, cons.left), SelImp(ante, cons.right))
    if isinstance(cons, SelImp):
        return "O5-imp", SelImp(And(ante, cons.ante), cons.cons)
    if isinstance(cons, LITERALS):
        return "P1", SelImp(ante, ProbConst(cons, GE, 1))
    return None


def _rewrite_outermost(phi: Formula, kind: type, rule: Callable):
    """Rewrite the first outermost top-position redex of type ``kind``."""
    if isinstance(phi, kind):
        hit = rule(phi)
        if hit is not None:
            return hit
    if isinstance(phi, (And, GOr)):
        hit = _rewrite_outermost(phi.left, kind, rule)
        if hit is not None:
            return hit[0], type(phi)(hit[1], phi.right)
        hit = _rewrite_outermost(phi.right, kind, rule)
        if hit is not None:
            return hit[0], type(phi)(phi.left, hit[1])
    elif isinstance(phi, SelImp):
        hit = _rewrite_outermost(phi.cons, kind, rule)
        if hit is not None:
            return hit[0], SelImp(phi.ante, hit[1])
    elif isinstance(phi, Cf):
        hit = _rewrite_outermost(phi.body, kind, rule)
        if hit is not None:
            return hit[0], Cf(phi.spec, hit[1])
    return None


def rewrite_steps(phi: Formula) -> Iterator[Step]:
    """Yield every rewrite step towards the normal form of ``phi``."""
    current, m = phi, measure(phi)
    while True:
        hit = _rewrite_outermost(current, Cf, _cf_rule) \
            or _rewrite_outermost(current, SelImp, _imp_rule)
        if hit is None:
            return
        name, current = hit
        new = measure(current)
        if not new < m:
            raise AssertionError(f"rule {name} did not decrease the measure: {m} -> {new}")
        m = new
        yield name, current, m


def normal_form(phi: Formula) -> Formula:
    """An equivalent formula satisfying :func:`is_normal_form`."""
    result = phi
    for _, result, _ in rewrite_steps(phi):
        pass
    if not is_normal_form(result):
        raise AssertionError("rewriting stopped before reaching the normal form")
    return result


# -- probabilities inward ------------------------------------------------------


def _push(phi: Formula) -> Formula:
    if isinstance(phi, (And, GOr)):
        return type(phi)(_push(phi.left), _push(phi.right))
    if isinstance(phi, SelImp):
        return SelImp(phi.ante, _push(phi.cons))
    if isinstance(phi, Cf):
        spec, body = phi.spec, phi.body
        if not spec.consistent:
            return _trivially_true(spec)
        if isinstance(body, ProbConst):
            return ProbConst(Cf(spec, body.arg), body.cmp, body.bound)
        if isinstance(body, ProbCmp):
            return ProbCmp(Cf(spec, body.left), body.cmp, Cf(spec, body.right))
        raise NotInNormalForm(f"counterfactual body is not a probability atom: {body!r}")
    return phi


def push_prob_inward(phi: Formula) -> Formula:
    """Move every top-position counterfactual inside the probability atom below it."""
    if not is_normal_form(phi):
        raise NotInNormalForm("push_prob_inward needs a formula in normal form")
    return _push(phi)
