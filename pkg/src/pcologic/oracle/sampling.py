"""Seeded random formulas, interventions and rationals over a signature."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from .. import formula as F
from ..formula import GE, GT, And, Cf, Eq, Formula, GOr, Neq, ProbCmp, ProbConst, SelImp
from ..model import CausalMultiteam, FunctionComponent, InterventionSpec, Multiteam, Signature

MAX_DEPTH = 4
MAX_DENOMINATOR = 6


class FormulaSampler:
    """Random formula source; equal seeds give equal streams.

    ``depth`` bounds the nesting of constructors chosen by the sampler;
    defined operators count as one constructor even though they expand
    into several primitive nodes.
    """

    def __init__(self, sig: Signature, seed: int = 0, *, max_depth: int = MAX_DEPTH,
                 max_denominator: int = MAX_DENOMINATOR, max_spec: int = 2,
                 inconsistent_specs: bool = True):
        self.sig = sig
        self.seed = seed
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.max_denominator = max_denominator
        self.max_spec = max_spec
        self.inconsistent_specs = inconsistent_specs

    # -- basic pieces --

    def variable(self) -> str:
        return self.rng.choice(self.sig.variables)

    def value(self, var: str) -> str:
        return self.rng.choice(self.sig.range_of(var))

    def literal(self) -> Formula:
        var = self.variable()
        return (Eq if self.rng.random() < 0.6 else Neq)(var, self.value(var))

    def rational(self, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Fraction:
        """A rational in [lo, hi] with denominator at most ``max_denominator``."""
        pool = sorted({Fraction(n, d) for d in range(1, self.max_denominator + 1)
                       for n in range(d + 1) if lo <= Fraction(n, d) <= hi})
        return self.rng.choice(pool)

    def spec(self, *, consistent: Optional[bool] = None) -> InterventionSpec:
        while True:
            n = self.rng.randint(1, self.max_spec)
            pairs = []
            for _ in range(n):
                var = self.variable()
                pairs.append((var, self.value(var)))
            spec = InterventionSpec(pairs)
            if consistent is None:
                if spec.consistent or self.inconsistent_specs:
                    return spec
            elif spec.consistent == consistent:
                return spec

    def spec_formula(self, spec: InterventionSpec) -> Formula:
        return F.conj([Eq(v, x) for v, x in spec.pairs])

    def _depth(self, depth):
        return self.rng.randint(0, self.max_depth) if depth is None else depth

    # -- CO --

    def co(self, depth: Optional[int] = None, *, counterfactuals: bool = True) -> Formula:
        depth = self._depth(depth)
        if depth <= 0:
            return self.literal()
        r = self.rng.random()
        sub = depth - 1
        kinds = ["and", "imp", "lit", "neg", "or", "cf", "cf", "top"]
        if not counterfactuals:
            kinds = ["and", "imp", "lit", "and", "imp"]
        kind = kinds[int(r * len(kinds))]
        if kind == "lit":
            return self.literal()
        if kind == "and":
            return And(self.co(sub, counterfactuals=counterfactuals),
                       self.co(self.rng.randint(0, sub), counterfactuals=counterfactuals))
        if kind == "imp":
            return SelImp(self.co(self.rng.randint(0, sub), counterfactuals=counterfactuals),
                          self.co(sub, counterfactuals=counterfactuals))
        if kind == "neg":
            return F.neg(self.sig, self.co(sub))
        if kind == "or":
            return F.lor(self.sig, self.co(sub), self.co(self.rng.randint(0, sub)))
        if kind == "top":
            return F.top(self.sig) if self.rng.random() < 0.5 else F.bot(self.sig)
        return Cf(self.spec(), self.co(sub))

    # -- PCO --

    def prob_atom(self, depth: int = 1, *, counterfactuals: bool = True,
                  defined: bool = True) -> Formula:
        arg_depth = self.rng.randint(0, max(depth - 1, 0))
        alpha = self.co(arg_depth, counterfactuals=counterfactuals)
        r = self.rng.random()
        if r < 0.2:
            beta = self.co(self.rng.randint(0, max(depth - 1, 0)),
                           counterfactuals=counterfactuals)
            return ProbCmp(alpha, self.rng.choice((GE, GT)), beta)
        eps = self.rational()
        if not defined or r < 0.6:
            return ProbConst(alpha, self.rng.choice((GE, GT)), eps)
        op = self.rng.choice(("le", "lt", "eq", "ne"))
        return F.mk_defined(self.sig, op, alpha, eps)

    def pco(self, depth: Optional[int] = None, *, counterfactuals: bool = True,
            defined: bool = True) -> Formula:
        """A PCO formula; without ``counterfactuals`` no [..] occurs anywhere,
        which also rules out the defined operators built from them."""
        depth = self._depth(depth)
        if not counterfactuals:
            defined = False
        kw = dict(counterfactuals=counterfactuals, defined=defined)
        if depth <= 0:
            if self.rng.random() < 0.7:
                return self.prob_atom(1, counterfactuals=counterfactuals, defined=defined)
            return self.literal()
        sub = depth - 1
        kinds = ["and", "gor", "imp", "atom", "co"]
        if counterfactuals:
            kinds += ["cf", "cf"]
        if defined:
            kinds += ["negc", "implies"]
        kind = self.rng.choice(kinds)
        if kind == "and":
            return And(self.pco(sub, **kw), self.pco(self.rng.randint(0, sub), **kw))
        if kind == "gor":
            return GOr(self.pco(sub, **kw), self.pco(self.rng.randint(0, sub), **kw))
        if kind == "imp":
            ante = self.co(self.rng.randint(0, min(sub, 2)), counterfactuals=counterfactuals)
            return SelImp(ante, self.pco(sub, **kw))
        if kind == "atom":
            return self.prob_atom(depth, counterfactuals=counterfactuals, defined=defined)
        if kind == "co":
            return self.co(sub, counterfactuals=counterfactuals)
        if kind == "cf":
            return Cf(self.spec(), self.pco(sub, **kw))
        if kind == "negc":
            return F.neg_c(self.sig, self.pco(sub, **kw))
        return F.implies(self.sig, self.pco(self.rng.randint(0, sub), **kw), self.pco(sub, **kw))


def random_laws(sig: Signature, rng: random.Random, p_endogenous: float = 0.5) -> FunctionComponent:
    """Random recursive laws: each endogenous variable reads only variables
    earlier in a random order, so the parent graph is acyclic."""
    order = list(sig.variables)
    rng.shuffle(order)
    tables = {}
    for pos, var in enumerate(order):
        earlier = order[:pos]
        if not earlier or rng.random() >= p_endogenous:
            continue
        inputs = [w for w in earlier if rng.random() < 0.7] or [rng.choice(earlier)]
        others = sig.others(var)
        picks = [others.index(w) for w in inputs]
        while True:
            memo = {}
            table = {}
            for key in itertools.product(*(sig.range_of(w) for w in others)):
                sub = tuple(key[i] for i in picks)
                if sub not in memo:
                    memo[sub] = rng.choice(sig.range_of(var))
                table[key] = memo[sub]
            if len(set(table.values())) > 1:
                break
        tables[var] = table
    return FunctionComponent(sig, tables)


def random_model(sig: Signature, rng: random.Random, max_rows: int = 8, *,
                 min_rows: int = 0) -> CausalMultiteam:
    """Random laws plus a random multiset of compatible rows."""
    laws = random_laws(sig, rng)
    exo = [sig.index(v) for v in laws.exogenous]
    counts: dict[tuple, int] = {}
    for _ in range(rng.randint(min_rows, max_rows)):
        row = [sig.range_of(v)[0] for v in sig.variables]
        for i in exo:
            row[i] = rng.choice(sig.ranges[i])
        # the exogenous columns determine the rest (the first variable in the
        # random order is always exogenous, so ``exo`` is never empty)
        spec = InterventionSpec([(sig.variables[i], row[i]) for i in exo])
        full = laws.apply(spec, tuple(row))
        counts[full] = counts.get(full, 0) + 1
    return CausalMultiteam(Multiteam(sig, counts), laws)
