"""Formula trees for CO and PCO.

There is a single tree type for both languages: a formula is a CO formula
exactly when it is built from literals, ``And``, ``SelImp`` and ``Cf``
alone (``phi.co``).  Defined operators are expanded when built, so
evaluation only ever sees the primitive constructors below.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FormulaTooLarge, IllTypedArgument, NotCoFormula, SameVariable
from .model import FunctionComponent, InterventionSpec, Signature

GE = ">="
GT = ">"
CMPS = (GE, GT)

#: Refuse to build derived formulas estimated above this many nodes.
NODE_BUDGET = 10**6


class Formula:
    __slots__ = ("_args", "_h", "co")

    def _seal(self, args, co):
        self._args = args
        self._h = hash((type(self).__name__, args))
        self.co = co

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented if not isinstance(other, Formula) else False
        return self._h == other._h and self._args == other._args

    def __hash__(self):
        return self._h

    def __reduce__(self):
        return (type(self), self._args)

    def __repr__(self):
        return f"{type(self).__name__}{self._args!r}"

    def __str__(self):
        from .io.printer import to_text
        return to_text(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


class Eq(Formula):
    __slots__ = ("var", "value")

    def __init__(self, var, value):
        self.var, self.value = str(var), str(value)
        self._seal((self.var, self.value), True)


class Neq(Formula):
    __slots__ = ("var", "value")

    def __init__(self, var, value):
        self.var, self.value = str(var), str(value)
        self._seal((self.var, self.value), True)


LITERALS = (Eq, Neq)


class And(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self.left, self.right = left, right
        self._seal((left, right), left.co and right.co)

    def children(self):
        return (self.left, self.right)


class GOr(Formula):
    """Global disjunction: T |= a || b iff T |= a or T |= b."""

    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self.left, self.right = left, right
        self._seal((left, right), False)

    def children(self):
        return (self.left, self.right)


class SelImp(Formula):
    """Selective implication alpha => phi (observe alpha, then check phi)."""

    __slots__ = ("ante", "cons")

    def __init__(self, ante: Formula, cons: Formula):
        if not ante.co:
            raise NotCoFormula("the antecedent of => must be a CO formula")
        self.ante, self.cons = ante, cons
        self._seal((ante, cons), cons.co)

    def children(self):
        return (self.ante, self.cons)


class Cf(Formula):
    """Interventionist counterfactual [X=x] phi."""

    __slots__ = ("spec", "body")

    def __init__(self, spec, body: Formula):
        if not isinstance(spec, InterventionSpec):
            spec = InterventionSpec(spec)
        self.spec, self.body = spec, body
        self._seal((spec, body), body.co)

    def children(self):
        return (self.body,)


def _bound(eps) -> Fraction:
    eps = eps if isinstance(eps, Fraction) else Fraction(eps)
    if not 0 <= eps <= 1:
        raise IllTypedArgument(f"probability bound {eps} is outside [0, 1]")
    return eps


def _cmp(cmp) -> str:
    if cmp not in CMPS:
        raise IllTypedArgument(f"comparison must be one of {CMPS}, got {cmp!r}")
    return cmp


class ProbConst(Formula):
    """Evaluation atom Pr(alpha) >= eps or Pr(alpha) > eps."""

    __slots__ = ("arg", "cmp", "bound")

    def __init__(self, arg: Formula, cmp: str, bound):
        if not arg.co:
            raise NotCoFormula("Pr() takes a CO formula")
        self.arg, self.cmp, self.bound = arg, _cmp(cmp), _bound(bound)
        self._seal((arg, self.cmp, self.bound), False)

    def children(self):
        return (self.arg,)


class ProbCmp(Formula):
    """Comparison atom Pr(alpha) >= Pr(beta) or Pr(alpha) > Pr(beta)."""

    __slots__ = ("left", "cmp", "right")

    def __init__(self, left: Formula, cmp: str, right: Formula):
        if not (left.co and right.co):
            raise NotCoFormula("Pr() takes a CO formula")
        self.left, self.cmp, self.right = left, _cmp(cmp), right
        self._seal((left, self.cmp, right), False)

    def children(self):
        return (self.left, self.right)


PROB_ATOMS = (ProbConst, ProbCmp)


def is_co(phi: Formula) -> bool:
    return phi.co


def require_co(phi: Formula, what: str = "formula") -> Formula:
    if not isinstance(phi, Formula) or not phi.co:
        raise NotCoFormula(f"{what} must be a CO formula")
    return phi


def is_literal(phi) -> bool:
    return isinstance(phi, LITERALS)


def is_prob_atom(phi) -> bool:
    return isinstance(phi, PROB_ATOMS)


def walk(phi: Formula) -> Iterable[Formula]:
    """All subformulas (pre-order), including those inside Pr() and antecedents."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def size(phi: Formula) -> int:
    return sum(1 for _ in walk(phi))


def has_cf(phi: Formula) -> bool:
    return any(isinstance(n, Cf) for n in walk(phi))


def check_signature(phi: Formula, sig: Signature) -> Formula:
    """Raise RangeViolation unless every variable and value of ``phi`` is in ``sig``."""
    seen = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        if isinstance(node, LITERALS):
            sig.check_value(node.var, node.value)
        elif isinstance(node, Cf):
            node.spec.check(sig)
        stack.extend(node.children())
    return phi


# -- defined operators ------------------------------------------------------


def top(sig: Signature) -> Cf:
    """X=x [] X=x for the first variable and value of the signature."""
    var, val = sig.variables[0], sig.ranges[0][0]
    return Cf([(var, val)], Eq(var, val))


def bot(sig: Signature) -> Cf:
    """X=x [] X!=x for the first variable and value of the signature."""
    var, val = sig.variables[0], sig.ranges[0][0]
    return Cf([(var, val)], Neq(var, val))


def is_bot(phi) -> bool:
    """Any X=x [] X!=x (all are equivalent to the signature's bottom)."""
    return isinstance(phi, Cf) and len(phi.spec) == 1 and isinstance(phi.body, Neq) \
        and phi.spec.pairs[0] == (phi.body.var, phi.body.value)


def is_top(phi) -> bool:
    return isinstance(phi, Cf) and len(phi.spec) == 1 and isinstance(phi.body, Eq) \
        and phi.spec.pairs[0] == (phi.body.var, phi.body.value)


def neg(sig: Signature, alpha: Formula) -> SelImp:
    """Dual negation: alpha => bottom."""
    require_co(alpha, "the argument of ~")
    return SelImp(alpha, bot(sig))


def dual_negated(phi):
    """Return alpha if ``phi`` is a dual negation alpha => bottom, else None."""
    if isinstance(phi, SelImp) and is_bot(phi.cons):
        return phi.ante
    return None


def lor(sig: Signature, alpha: Formula, beta: Formula) -> Formula:
    """Tensor disjunction ~(~alpha & ~beta)."""
    require_co(alpha, "the arguments of \\/")
    require_co(beta, "the arguments of \\/")
    return neg(sig, And(neg(sig, alpha), neg(sig, beta)))


def equiv(alpha: Formula, beta: Formula) -> Formula:
    require_co(alpha, "the arguments of <=>")
    require_co(beta, "the arguments of <=>")
    return And(SelImp(alpha, beta), SelImp(beta, alpha))


def pr_ge(alpha, eps):
    return ProbConst(alpha, GE, eps)


def pr_gt(alpha, eps):
    return ProbConst(alpha, GT, eps)


def pr_le(sig, alpha, eps):
    return ProbConst(neg(sig, alpha), GE, 1 - _bound(eps))


def pr_lt(sig, alpha, eps):
    return ProbConst(neg(sig, alpha), GT, 1 - _bound(eps))


def pr_eq(sig, alpha, eps):
    return And(pr_ge(alpha, eps), pr_le(sig, alpha, eps))


def pr_ne(sig, alpha, eps):
    return GOr(pr_gt(alpha, eps), pr_lt(sig, alpha, eps))


def cond(gamma, atom):
    """Pr(alpha | gamma) op eps (or op Pr(beta | gamma)) as gamma => atom."""
    return SelImp(require_co(gamma, "the condition"), atom)


def implies(sig, psi, chi):
    """Material conditional psi -> chi, i.e. psi^C || chi."""
    return GOr(neg_c(sig, psi), chi)


def iff(sig, psi, chi):
    return And(implies(sig, psi, chi), implies(sig, chi, psi))


def conj(items: Sequence[Formula]) -> Formula:
    """Balanced conjunction of a nonempty sequence."""
    return _balanced(list(items), And)


def gor_all(items: Sequence[Formula]) -> Formula:
    return _balanced(list(items), GOr)


def lor_all(sig, items: Sequence[Formula]) -> Formula:
    return _balanced(list(items), lambda a, b: lor(sig, a, b))


def _balanced(items, op):
    if not items:
        raise IllTypedArgument("empty conjunction/disjunction")
    while len(items) > 1:
        paired = [op(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


_DEFINED = {
    "top": lambda sig: top(sig),
    "bot": lambda sig: bot(sig),
    "neg": neg,
    "or": lor,
    "equiv": lambda sig, a, b: equiv(a, b),
    "ge": lambda sig, a, e: pr_ge(a, e),
    "gt": lambda sig, a, e: pr_gt(a, e),
    "le": pr_le,
    "lt": pr_lt,
    "eq": pr_eq,
    "ne": pr_ne,
    "cmp_ge": lambda sig, a, b: ProbCmp(a, GE, b),
    "cmp_gt": lambda sig, a, b: ProbCmp(a, GT, b),
    "cmp_le": lambda sig, a, b: ProbCmp(b, GE, a),
    "cmp_lt": lambda sig, a, b: ProbCmp(b, GT, a),
    "cond": lambda sig, gamma, atom: cond(gamma, atom),
    "implies": implies,
    "iff": iff,
}

DEFINED_OPS = tuple(_DEFINED)


def mk_defined(sig: Signature, op: str, *args) -> Formula:
    """Build a defined operator by name, fully expanded to primitives.

    Conditional atoms are written ``mk_defined(sig, "cond", gamma, atom)``
    where ``atom`` is the unconditional atom, e.g. ``pr_ge(alpha, eps)``.
    """
    try:
        build = _DEFINED[op]
    except KeyError:
        raise IllTypedArgument(f"unknown defined operator {op!r}") from None
    return build(sig, *args)


# -- weak contradictory negation ----------------------------------------------


def neg_c(sig: Signature, phi: Formula) -> Formula:
    """phi^C, which holds on a nonempty model exactly when phi fails."""
    if is_bot(phi):
        (var, val), = phi.spec.pairs
        return Cf([(var, val)], Eq(var, val))
    if is_top(phi):
        (var, val), = phi.spec.pairs
        return Cf([(var, val)], Neq(var, val))
    if isinstance(phi, ProbConst):
        inner = dual_negated(phi.arg)
        if inner is not None:
            # Pr(~a) > e is Pr(a) < 1-e; negate back to Pr(a) >= 1-e (and dually).
            return ProbConst(inner, GE if phi.cmp == GT else GT, 1 - phi.bound)
        if phi.cmp == GE:
            return pr_lt(sig, phi.arg, phi.bound)
        return pr_le(sig, phi.arg, phi.bound)
    if isinstance(phi, ProbCmp):
        return ProbCmp(phi.right, GT if phi.cmp == GE else GE, phi.left)
    if isinstance(phi, LITERALS):
        return pr_lt(sig, phi, 1)
    if isinstance(phi, And):
        return GOr(neg_c(sig, phi.left), neg_c(sig, phi.right))
    if isinstance(phi, GOr):
        return And(neg_c(sig, phi.left), neg_c(sig, phi.right))
    if isinstance(phi, SelImp):
        return And(pr_gt(phi.ante, 0), SelImp(phi.ante, neg_c(sig, phi.cons)))
    if isinstance(phi, Cf):
        if not phi.spec.consistent:
            # [X=x] phi is vacuously true for inconsistent X=x, so its negation is bottom.
            return bot(sig)
        return Cf(phi.spec, neg_c(sig, phi.body))
    raise IllTypedArgument(f"not a formula: {phi!r}")


# -- notation helpers and characterisation formulas ------------------------------


def tuple_literal(vars_: Sequence[str], vals: Sequence, polarity: str = "=",
                  *, co: bool = False, sig: Signature | None = None) -> Formula:
    """X = x as a conjunction, or X != x as a disjunction of inequalities.

    The disjunction is global (||) by default; with ``co=True`` it is the
    tensor disjunction, which needs ``sig``.
    """
    if len(vars_) != len(vals) or not vars_:
        raise IllTypedArgument("need equally many (and at least one) variables and values")
    if polarity == "=":
        return conj([Eq(v, x) for v, x in zip(vars_, vals)])
    if polarity != "!=":
        raise IllTypedArgument(f"polarity must be '=' or '!=', got {polarity!r}")
    lits = [Neq(v, x) for v, x in zip(vars_, vals)]
    if co:
        if sig is None:
            raise IllTypedArgument("a CO disjunction needs the signature")
        return lor_all(sig, lits)
    return gor_all(lits)


def _ranges(sig, vars_):
    return itertools.product(*(sig.range_of(v) for v in vars_))


def _check_budget(n_disjuncts, per, budget):
    estimate = n_disjuncts * per
    if estimate > budget:
        raise FormulaTooLarge(estimate, budget)


def _pair_disjuncts(sig, x, y, context_sets, budget):
    if x == y:
        raise SameVariable(f"{x} and {y} must differ")
    sig.index(x), sig.index(y)
    rx, ry = sig.range_of(x), sig.range_of(y)
    n_ctx = sum(_count(sig, zs) for zs in context_sets)
    n = n_ctx * len(rx) * (len(rx) - 1) * len(ry) * (len(ry) - 1)
    _check_budget(n, 16 + 4 * len(sig), budget)
    disjuncts = []
    for zs in context_sets:
        for zvals in _ranges(sig, zs):
            ctx = list(zip(zs, zvals))
            for xv, xw in itertools.permutations(rx, 2):
                for yv, yw in itertools.permutations(ry, 2):
                    disjuncts.append(And(
                        Cf(ctx + [(x, xv)], Eq(y, yv)),
                        Cf(ctx + [(x, xw)], Eq(y, yw)),
                    ))
    return disjuncts


def _count(sig, vars_):
    n = 1
    for v in vars_:
        n *= len(sig.range_of(v))
    return n


def build_aff(sig: Signature, x: str, y: str, *, budget: int = NODE_BUDGET) -> Formula:
    """x causally affects y: some context Z=z on Dom minus {x, y} and two values of x
    lead to two different values of y."""
    rest = [v for v in sig.variables if v not in (x, y)]
    contexts = [zs for k in range(len(rest) + 1) for zs in itertools.combinations(rest, k)]
    disjuncts = _pair_disjuncts(sig, x, y, contexts, budget)
    if not disjuncts:
        return bot(sig)
    return lor_all(sig, disjuncts)


def build_dc(sig: Signature, x: str, y: str, *, budget: int = NODE_BUDGET) -> Formula:
    """x is a direct cause of y (x is a non-dummy argument of the law of y)."""
    rest = tuple(v for v in sig.variables if v not in (x, y))
    disjuncts = _pair_disjuncts(sig, x, y, [rest], budget)
    if not disjuncts:
        return bot(sig)
    return lor_all(sig, disjuncts)


def build_end(sig: Signature, y: str, *, budget: int = NODE_BUDGET) -> Formula:
    """y is endogenous: the global disjunction of direct-cause formulas into y."""
    others = sig.others(y)
    if not others:
        return bot(sig)
    return gor_all([build_dc(sig, x, y, budget=budget) for x in others])


def build_exo(sig: Signature, y: str, *, budget: int = NODE_BUDGET) -> Formula:
    return neg_c(sig, build_end(sig, y, budget=budget))


def law_formula(laws: FunctionComponent, v: str) -> Formula:
    """W_V = w [] V = F_V(w) for every w."""
    sig = laws.signature
    others = sig.others(v)
    table = laws.tables[v]
    return conj([Cf(list(zip(others, w)), Eq(v, table[w])) for w in _ranges(sig, others)])


def unmoved_formula(sig: Signature, v: str) -> Formula:
    """V = v => (W_V = w [] V = v) for every v and w (V is not moved by interventions)."""
    others = sig.others(v)
    if not others:
        return top(sig)
    return conj([
        SelImp(Eq(v, val), Cf(list(zip(others, w)), Eq(v, val)))
        for w in _ranges(sig, others) for val in sig.range_of(v)
    ])


def build_phi_f(laws: FunctionComponent, *, budget: int = NODE_BUDGET) -> Formula:
    """A formula satisfied by a nonempty model exactly when its laws equal ``laws``."""
    sig = laws.signature
    _check_budget(sig.n_assignments() * len(sig), 4, budget)
    parts = [law_formula(laws, v) if v in laws.endogenous else unmoved_formula(sig, v)
             for v in sig.variables]
    return conj(parts)
