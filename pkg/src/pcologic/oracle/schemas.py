"""Instance generators for the axiom schemas.

``make_instance`` builds one instance from explicit parameters and checks
the schema's side conditions.  ``instantiate_schema`` draws parameters at
random (or lists them all for schemas with few instances) and yields
distinct well-formed instances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .. import formula as F
from ..errors import SideConditionViolation, UnknownSchema
from ..formula import GE, GT, And, Cf, Eq, Formula, GOr, Neq, ProbCmp, ProbConst, SelImp
from ..model import InterventionSpec, Signature
from .sampling import FormulaSampler

SCHEMA_IDS = (
    "T1", "T2", "P1", "P2", "P3", "P3b", "P4", "P5", "P6", "P6b", "CP1", "CP2",
    "O1", "O1b", "O2", "O3", "O4", "O5∧", "O5⊔", "O5⊃", "A1", "A2", "A3",
    "C1", "C2", "C3", "C4", "C4b", "C5", "C6", "C7", "C8", "C8b", "C9", "C10", "C11",
)

_ALIASES = {"O5and": "O5∧", "O5gor": "O5⊔", "O5imp": "O5⊃"}

#: Longest causal chain used for C11 instances.
C11_MAX_CHAIN = 3

T1_TEMPLATES = (
    "identity", "weakening", "distribution", "peirce", "de-morgan-and", "de-morgan-or",
    "excluded-middle", "double-negation", "explosion", "and-elim", "or-intro",
    "contraposition",
)

T2_TEMPLATES = T1_TEMPLATES + ("top",)


def canonical_id(schema_id: str) -> str:
    sid = _ALIASES.get(schema_id, schema_id)
    if sid not in SCHEMA_IDS:
        raise UnknownSchema(f"unknown schema {schema_id!r}")
    return sid


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SideConditionViolation(message)


def _spec(spec) -> InterventionSpec:
    return spec if isinstance(spec, InterventionSpec) else InterventionSpec(spec)


def _consistent(spec, what="X=x"):
    spec = _spec(spec)
    _require(spec.consistent, f"{what} must be consistent")
    return spec


def _as_formula(spec: InterventionSpec) -> Formula:
    return F.conj([Eq(v, x) for v, x in spec.pairs])


def _eq(sig, alpha, eps):
    return F.pr_eq(sig, alpha, eps)


# -- builders ------------------------------------------------------------------


def _t1(sig, template, phi, psi=None, chi=None):
    imp = lambda a, b: F.implies(sig, a, b)  # noqa: E731
    iff = lambda a, b: F.iff(sig, a, b)  # noqa: E731
    nc = lambda a: F.neg_c(sig, a)  # noqa: E731
    psi = psi if psi is not None else phi
    chi = chi if chi is not None else phi
    table = {
        "identity": lambda: imp(phi, phi),
        "weakening": lambda: imp(phi, imp(psi, phi)),
        "distribution": lambda: imp(imp(phi, imp(psi, chi)), imp(imp(phi, psi), imp(phi, chi))),
        "peirce": lambda: imp(imp(imp(phi, psi), phi), phi),
        "de-morgan-and": lambda: iff(nc(And(phi, psi)), GOr(nc(phi), nc(psi))),
        "de-morgan-or": lambda: iff(nc(GOr(phi, psi)), And(nc(phi), nc(psi))),
        "excluded-middle": lambda: GOr(phi, nc(phi)),
        "double-negation": lambda: iff(nc(nc(phi)), phi),
        "explosion": lambda: imp(F.bot(sig), phi),
        "and-elim": lambda: imp(And(phi, psi), phi),
        "or-intro": lambda: imp(phi, GOr(phi, psi)),
        "contraposition": lambda: imp(imp(phi, psi), imp(nc(psi), nc(phi))),
    }
    if template not in table:
        raise SideConditionViolation(f"unknown tautology template {template!r}")
    return table[template]()


def _t2(sig, template, alpha, beta=None, gamma=None):
    for x in (alpha, beta, gamma):
        if x is not None:
            F.require_co(x, "T2 arguments")
    beta = beta if beta is not None else alpha
    gamma = gamma if gamma is not None else alpha
    neg = lambda a: F.neg(sig, a)  # noqa: E731
    lor = lambda a, b: F.lor(sig, a, b)  # noqa: E731
    table = {
        "identity": lambda: SelImp(alpha, alpha),
        "weakening": lambda: SelImp(alpha, SelImp(beta, alpha)),
        "distribution": lambda: SelImp(SelImp(alpha, SelImp(beta, gamma)),
                                       SelImp(SelImp(alpha, beta), SelImp(alpha, gamma))),
        "peirce": lambda: SelImp(SelImp(SelImp(alpha, beta), alpha), alpha),
        "de-morgan-and": lambda: F.equiv(neg(And(alpha, beta)), lor(neg(alpha), neg(beta))),
        "de-morgan-or": lambda: F.equiv(neg(lor(alpha, beta)), And(neg(alpha), neg(beta))),
        "excluded-middle": lambda: lor(alpha, neg(alpha)),
        "double-negation": lambda: F.equiv(neg(neg(alpha)), alpha),
        "explosion": lambda: SelImp(F.bot(sig), alpha),
        "and-elim": lambda: SelImp(And(alpha, beta), alpha),
        "or-intro": lambda: SelImp(alpha, lor(alpha, beta)),
        "contraposition": lambda: SelImp(SelImp(alpha, beta), SelImp(neg(beta), neg(alpha))),
        "top": lambda: SelImp(alpha, F.top(sig)),
    }
    if template not in table:
        raise SideConditionViolation(f"unknown tautology template {template!r}")
    return table[template]()


def _p3(sig, alpha, beta, delta, eps):
    delta, eps = Fraction(delta), Fraction(eps)
    _require(delta + eps <= 1, "P3 needs delta + eps <= 1")
    return F.implies(sig, F.conj([_eq(sig, alpha, delta), _eq(sig, beta, eps),
                                  _eq(sig, And(alpha, beta), 0)]),
                     _eq(sig, F.lor(sig, alpha, beta), delta + eps))


def _p4(sig, alpha, delta, eps):
    _require(Fraction(delta) > Fraction(eps), "P4 needs delta > eps")
    return F.implies(sig, F.pr_le(sig, alpha, eps), F.pr_lt(sig, alpha, delta))


def _cp(strict):
    def build(sig, alpha, beta, delta, eps):
        delta, eps = Fraction(delta), Fraction(eps)
        if strict:
            _require(delta > eps, "CP2 needs delta > eps")
        else:
            _require(delta >= eps, "CP1 needs delta >= eps")
        return F.implies(sig, And(_eq(sig, alpha, delta), _eq(sig, beta, eps)),
                         ProbCmp(alpha, GT if strict else GE, beta))
    return build


def _o2(sig, alpha, beta, delta, eps):
    delta, eps = Fraction(delta), Fraction(eps)
    _require(delta != 0, "O2 needs delta != 0")
    _require(eps <= delta, "O2 needs eps <= delta so that eps/delta is a probability")
    return F.implies(sig, And(_eq(sig, alpha, delta), _eq(sig, And(alpha, beta), eps)),
                     SelImp(alpha, _eq(sig, beta, eps / delta)))


def _o3(sig, alpha, beta, delta, eps):
    delta, eps = Fraction(delta), Fraction(eps)
    _require(eps != 0, "O3 needs eps != 0")
    return F.implies(sig, SelImp(alpha, _eq(sig, beta, eps)),
                     F.iff(sig, _eq(sig, alpha, delta), _eq(sig, And(alpha, beta), eps * delta)))


def _a1(sig, variables, values, other):
    _require(len(set(variables)) == len(variables), "A1 needs distinct variables")
    _require(tuple(values) != tuple(other), "A1 needs y != y'")
    return F.implies(sig, F.tuple_literal(variables, values),
                     F.tuple_literal(variables, other, "!="))


def _a3(sig, variables):
    _require(len(set(variables)) == len(variables), "A3 needs distinct variables")
    tuples = itertools.product(*(sig.range_of(v) for v in variables))
    return F.lor_all(sig, [F.tuple_literal(variables, ys) for ys in tuples])


def _c4(sig, outer, inner, chi):
    outer = _consistent(outer, "the outer intervention")
    inner = _spec(inner)
    overridden = set(inner.variables)
    merged = InterventionSpec([(v, x) for v, x in outer.pairs if v not in overridden]
                              + list(inner.pairs))
    return F.implies(sig, Cf(outer, Cf(inner, chi)), Cf(merged, chi))


def _c4b(sig, outer, inner, chi):
    outer, inner = _spec(outer), _spec(inner)
    joint = _consistent(list(outer.pairs) + list(inner.pairs), "X=x & Y=y")
    return F.implies(sig, Cf(joint, chi), Cf(outer, Cf(inner, chi)))


def _c7(sig, spec, gamma):
    spec = _spec(spec)
    _require(not F.has_cf(gamma), "C7 needs gamma without counterfactuals")
    return F.implies(sig, And(_as_formula(spec), gamma), Cf(spec, gamma))


def _c8(sig, spec, alpha, cmp, eps):
    spec = _consistent(spec)
    return F.iff(sig, Cf(spec, ProbConst(alpha, cmp, eps)),
                 ProbConst(Cf(spec, alpha), cmp, eps))


def _c8b(sig, spec, alpha, cmp, beta):
    spec = _consistent(spec)
    return F.iff(sig, Cf(spec, ProbCmp(alpha, cmp, beta)),
                 ProbCmp(Cf(spec, alpha), cmp, Cf(spec, beta)))


def _context(sig, y, w):
    others = sig.others(y)
    _require(len(w) == len(others), f"need one value for each variable other than {y}")
    return list(zip(others, w))


def _c9(sig, y, w):
    body = F.gor_all([Eq(y, v) for v in sig.range_of(y)])
    return F.implies(sig, F.build_end(sig, y), Cf(_context(sig, y, w), body))


def _c10(sig, y, value, w):
    return F.implies(sig, F.build_exo(sig, y),
                     SelImp(Eq(y, value), Cf(_context(sig, y, w), Eq(y, value))))


def _c11(sig, chain):
    _require(len(chain) > 1, "C11 needs a chain of at least two variables")
    _require(len(set(chain)) == len(chain), "C11 uses distinct variables")
    links = [F.build_aff(sig, a, b) for a, b in zip(chain, chain[1:])]
    return F.implies(sig, F.conj(links), F.neg_c(sig, F.build_aff(sig, chain[-1], chain[0])))


_BUILDERS: dict[str, Callable[..., Formula]] = {
    "T1": _t1,
    "T2": _t2,
    "P1": lambda sig, alpha: F.iff(sig, alpha, _eq(sig, alpha, 1)),
    "P2": lambda sig, alpha: F.pr_ge(alpha, 0),
    "P3": _p3,
    "P3b": lambda sig, alpha, beta, eps: F.implies(
        sig, And(F.pr_ge(alpha, eps), _eq(sig, And(alpha, beta), 0)),
        F.pr_le(sig, beta, 1 - Fraction(eps))),
    "P4": _p4,
    "P5": lambda sig, alpha, eps: F.implies(sig, F.pr_lt(sig, alpha, eps),
                                            F.pr_le(sig, alpha, eps)),
    "P6": lambda sig, alpha, beta, eps: F.implies(
        sig, _eq(sig, F.equiv(alpha, beta), 1),
        F.implies(sig, _eq(sig, alpha, eps), _eq(sig, beta, eps))),
    "P6b": lambda sig, alpha, beta, eps: F.implies(
        sig, _eq(sig, SelImp(alpha, beta), 1),
        F.implies(sig, _eq(sig, alpha, eps), F.pr_ge(beta, eps))),
    "CP1": _cp(False),
    "CP2": _cp(True),
    "O1": lambda sig, alpha, psi: F.implies(sig, _eq(sig, alpha, 0), SelImp(alpha, psi)),
    "O1b": lambda sig, alpha: F.implies(sig, SelImp(alpha, F.bot(sig)), _eq(sig, alpha, 0)),
    "O2": _o2,
    "O3": _o3,
    "O4": lambda sig, alpha, psi: F.implies(sig, SelImp(alpha, psi), F.implies(sig, alpha, psi)),
    "O5∧": lambda sig, alpha, psi, chi: F.iff(
        sig, SelImp(alpha, And(psi, chi)), And(SelImp(alpha, psi), SelImp(alpha, chi))),
    "O5⊔": lambda sig, alpha, psi, chi: F.iff(
        sig, SelImp(alpha, GOr(psi, chi)), GOr(SelImp(alpha, psi), SelImp(alpha, chi))),
    "O5⊃": lambda sig, alpha, beta, chi: F.iff(
        sig, SelImp(alpha, SelImp(beta, chi)), SelImp(And(alpha, beta), chi)),
    "A1": _a1,
    "A2": lambda sig, var, value: F.iff(sig, Neq(var, value),
                                        SelImp(Eq(var, value), F.bot(sig))),
    "A3": _a3,
    "C1": lambda sig, spec, psi, chi: F.iff(
        sig, Cf(spec, And(psi, chi)), And(Cf(spec, psi), Cf(spec, chi))),
    "C2": lambda sig, spec, psi, chi: F.iff(
        sig, Cf(spec, GOr(psi, chi)), GOr(Cf(spec, psi), Cf(spec, chi))),
    "C3": lambda sig, spec, alpha, chi: F.iff(
        sig, Cf(spec, SelImp(alpha, chi)), SelImp(Cf(spec, alpha), Cf(spec, chi))),
    "C4": _c4,
    "C4b": _c4b,
    "C5": lambda sig, spec, psi: F.implies(sig, Cf(_consistent(spec), F.bot(sig)), psi),
    "C6": lambda sig, spec, var, value: Cf(list(_spec(spec).pairs) + [(var, value)],
                                           Eq(var, value)),
    "C7": _c7,
    "C8": _c8,
    "C8b": _c8b,
    "C9": _c9,
    "C10": _c10,
    "C11": _c11,
}


def make_instance(schema_id: str, sig: Signature, **params) -> Formula:
    """One instance of a schema; SideConditionViolation if a side condition fails."""
    formula = _BUILDERS[canonical_id(schema_id)](sig, **params)
    F.check_signature(formula, sig)
    return formula


# -- parameter sources -------------------------------------------------------------


def _tuples(sig: Signature, max_len: int = 3):
    for k in range(1, min(len(sig), max_len) + 1):
        yield from itertools.permutations(sig.variables, k)


def _values(sig, variables):
    return itertools.product(*(sig.range_of(v) for v in variables))


def _exhaustive(sid: str, sig: Signature) -> Optional[Iterator[dict]]:
    """All parameter choices for schemas with finitely many instances."""
    if sid == "A1":
        return (dict(variables=ys, values=a, other=b) for ys in _tuples(sig)
                for a in _values(sig, ys) for b in _values(sig, ys) if a != b)
    if sid == "A2":
        return (dict(var=v, value=x) for v in sig.variables for x in sig.range_of(v))
    if sid == "A3":
        return (dict(variables=ys) for ys in _tuples(sig))
    if sid == "C9":
        return (dict(y=y, w=w) for y in sig.variables for w in _values(sig, sig.others(y)))
    if sid == "C10":
        return (dict(y=y, value=v, w=w) for y in sig.variables for v in sig.range_of(y)
                for w in _values(sig, sig.others(y)))
    if sid == "C11":
        return (dict(chain=chain) for n in range(2, min(len(sig), C11_MAX_CHAIN) + 1)
                for chain in itertools.permutations(sig.variables, n))
    return None


def _sample(sid: str, s: FormulaSampler) -> dict:
    """Random parameters for a schema (side conditions are checked later)."""
    rng = s.rng
    co = lambda: s.co(rng.randint(0, 2))  # noqa: E731
    pco = lambda: s.pco(rng.randint(0, 2))  # noqa: E731
    eps = s.rational
    if sid == "T1":
        return dict(template=rng.choice(T1_TEMPLATES), phi=pco(), psi=pco(), chi=pco())
    if sid == "T2":
        return dict(template=rng.choice(T2_TEMPLATES), alpha=co(), beta=co(), gamma=co())
    if sid in ("P1", "P2", "O1b"):
        return dict(alpha=co())
    if sid in ("P3", "CP1", "CP2", "O2", "O3"):
        return dict(alpha=co(), beta=co(), delta=eps(), eps=eps())
    if sid in ("P3b", "P6", "P6b"):
        return dict(alpha=co(), beta=co(), eps=eps())
    if sid == "P4":
        return dict(alpha=co(), delta=eps(), eps=eps())
    if sid == "P5":
        return dict(alpha=co(), eps=eps())
    if sid in ("O1", "O4"):
        return dict(alpha=co(), psi=pco())
    if sid in ("O5∧", "O5⊔"):
        return dict(alpha=co(), psi=pco(), chi=pco())
    if sid == "O5⊃":
        return dict(alpha=co(), beta=co(), chi=pco())
    if sid in ("C1", "C2"):
        return dict(spec=s.spec(), psi=pco(), chi=pco())
    if sid == "C3":
        return dict(spec=s.spec(), alpha=co(), chi=pco())
    if sid in ("C4", "C4b"):
        return dict(outer=s.spec(), inner=s.spec(), chi=pco())
    if sid == "C5":
        return dict(spec=s.spec(), psi=pco())
    if sid == "C6":
        var = s.variable()
        return dict(spec=s.spec(), var=var, value=s.value(var))
    if sid == "C7":
        return dict(spec=s.spec(), gamma=s.pco(rng.randint(0, 2), counterfactuals=False))
    if sid == "C8":
        return dict(spec=s.spec(), alpha=co(), cmp=rng.choice((GE, GT)), eps=eps())
    if sid == "C8b":
        return dict(spec=s.spec(), alpha=co(), cmp=rng.choice((GE, GT)), beta=co())
    raise UnknownSchema(f"no sampler for {sid!r}")


def instance_params(schema_id: str, sig: Signature, sample_budget: int, *,
                    seed: int = 0) -> Iterator[dict]:
    """Parameters of distinct well-formed instances, at most ``sample_budget`` of them."""
    sid = canonical_id(schema_id)
    finite = _exhaustive(sid, sig)
    seen = set()
    if finite is not None:
        source = finite
    else:
        sampler = FormulaSampler(sig, seed)
        source = (_sample(sid, sampler) for _ in range(max(50, 40 * sample_budget)))
    for params in source:
        if len(seen) >= sample_budget:
            return
        try:
            formula = make_instance(sid, sig, **params)
        except SideConditionViolation:
            continue
        if formula not in seen:
            seen.add(formula)
            yield params


def instantiate_schema(schema_id: str, sig: Signature, sample_budget: int, *,
                       seed: int = 0) -> Iterator[Formula]:
    """Yield up to ``sample_budget`` distinct instances of a schema.

    Schemas with finitely many instances over ``sig`` (A1-A3, C9-C11) are
    listed exhaustively in a fixed order; the others are sampled from
    ``seed``.
    """
    sid = canonical_id(schema_id)
    for params in instance_params(sid, sig, sample_budget, seed=seed):
        yield make_instance(sid, sig, **params)


def full_instance_count(schema_id: str, sig: Signature) -> Optional[int]:
    """Number of instances of a finite schema, or None for sampled schemas."""
    sid = canonical_id(schema_id)
    finite = _exhaustive(sid, sig)
    if finite is None:
        return None
    return len({make_instance(sid, sig, **p) for p in finite})
