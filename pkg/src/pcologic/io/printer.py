"""Render formulas in the concrete syntax accepted by :func:`parse_formula`."""

from __future__ import annotations

from fractions import Fraction

from ..formula import And, Cf, Eq, Formula, GOr, Neq, ProbCmp, ProbConst, SelImp, bot, top

# binding strength, loosest first
_COND, _DISJ, _CONJ, _UNARY, _ATOM = 1, 2, 3, 4, 5


def fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def spec_text(spec) -> str:
    return "[" + ",".join(f"{v}={x}" for v, x in spec.pairs) + "]"


def to_text(phi: Formula, sig=None) -> str:
    """Print ``phi``; parsing the result against a signature returns ``phi`` again.

    Without ``sig`` only primitive syntax is used.  With ``sig`` the dual
    negation, tensor disjunction, TOP and BOT are re-sugared.
    """
    return _Printer(sig).show(phi, _COND)


class _Printer:
    def __init__(self, sig):
        self.sig = sig
        if sig is not None:
            self.bot, self.top = bot(sig), top(sig)
        else:
            self.bot = self.top = None

    def show(self, phi, need):
        text, level = self.render(phi)
        return f"({text})" if level < need else text

    def _negated(self, phi):
        if self.bot is not None and isinstance(phi, SelImp) and phi.cons == self.bot:
            return phi.ante
        return None

    def _tensor(self, phi):
        inner = self._negated(phi)
        if isinstance(inner, And):
            a, b = self._negated(inner.left), self._negated(inner.right)
            if a is not None and b is not None:
                return a, b
        return None

    def render(self, phi):
        if self.sig is not None:
            if phi == self.top:
                return "TOP", _ATOM
            if phi == self.bot:
                return "BOT", _ATOM
            pair = self._tensor(phi)
            if pair is not None:
                return f"{self.show(pair[0], _DISJ)} \\/ {self.show(pair[1], _CONJ)}", _DISJ
            inner = self._negated(phi)
            if inner is not None:
                return "~" + self.show(inner, _UNARY), _UNARY
        kind = type(phi)
        if kind is Eq:
            return f"{phi.var}={phi.value}", _ATOM
        if kind is Neq:
            return f"{phi.var}!={phi.value}", _ATOM
        if kind is And:
            return f"{self.show(phi.left, _CONJ)} & {self.show(phi.right, _UNARY)}", _CONJ
        if kind is GOr:
            return f"{self.show(phi.left, _DISJ)} || {self.show(phi.right, _CONJ)}", _DISJ
        if kind is SelImp:
            return f"{self.show(phi.ante, _DISJ)} => {self.show(phi.cons, _COND)}", _COND
        if kind is Cf:
            return f"{spec_text(phi.spec)} {self.show(phi.body, _UNARY)}", _UNARY
        if kind is ProbConst:
            arg = self.show(phi.arg, _COND)
            return f"P({arg}) {phi.cmp} {fraction_text(phi.bound)}", _ATOM
        if kind is ProbCmp:
            left, right = self.show(phi.left, _COND), self.show(phi.right, _COND)
            return f"P({left}) {phi.cmp} P({right})", _ATOM
        raise TypeError(f"not a formula: {phi!r}")
