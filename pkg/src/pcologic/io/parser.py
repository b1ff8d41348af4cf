"""Recursive-descent parser for the formula syntax.

Grammar, loosest binding first (all conditionals are right-associative)::

    formula := disj [ ("=>" | "->" | "<->" | "<=>") formula ]
    disj    := conj { ("\\/" | "||") conj }
    conj    := unary { "&" unary }
    unary   := "~" unary | "!" unary | "[" pairs "]" unary | atom
    atom    := "(" formula ")" | "TOP" | "BOT" | prob | VAR "=" VAL | VAR "!=" VAL
    prob    := "P(" formula [ "|" formula ] ")" CMP ( RATIONAL | "P(" ... ")" )
    CMP     := ">=" | ">" | "<=" | "<" | "=" | "!="
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .. import formula as F
from ..errors import (
    CoFragmentViolation,
    ParseError,
    UnknownVariable,
    ValueOutOfRange,
)
from ..model import InterventionSpec, Signature


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><=>|<->|->|=>|>=|<=|!=|\|\||\\/|[&|~!\[\](),=<>])
  | (?P<name>[A-Za-z0-9_.]+(?:/[0-9]+)?)
""", re.VERBOSE)

_CONDITIONALS = ("=>", "->", "<->", "<=>")
_CMP_OPS = (">=", ">", "<=", "<", "=", "!=")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, pos + 1, text)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("eof", "", len(text), len(text)))
    return tokens


def parse_rational(text: str, start: int = 0, source: str | None = None) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", start, start + len(text), source) \
            from None
    if not 0 <= value <= 1:
        raise ParseError(f"probability bound {text} is outside [0, 1]",
                         start, start + len(text), source)
    return value


def parse_formula(text: str, sig: Signature) -> F.Formula:
    """Parse ``text`` into a primitive formula tree over ``sig``."""
    return _Parser(text, sig).parse()


def parse_spec(text: str, sig: Signature) -> InterventionSpec:
    """Parse ``X=1,Y=2`` (brackets optional) into an intervention spec."""
    body = text.strip()
    if not body.startswith("["):
        body = f"[{body}]"
    parser = _Parser(body, sig)
    spec = parser.spec()
    parser.expect("eof")
    return spec


class _Parser:
    def __init__(self, text, sig):
        self.text = text
        self.sig = sig
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(message, tok.start, tok.end, self.text)

    def expect(self, text_or_kind) -> Token:
        tok = self.tok
        if tok.text == text_or_kind or (text_or_kind == "eof" and tok.kind == "eof"):
            return self.advance()
        found = tok.text or "end of input"
        raise self.error(f"expected {text_or_kind!r}, found {found!r}")

    def at(self, *texts) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def co(self, phi, tok, what):
        if not phi.co:
            raise self.error(f"{what} must be a CO formula", tok, CoFragmentViolation)
        return phi

    # -- grammar --

    def parse(self):
        phi = self.formula()
        self.expect("eof")
        return phi

    def formula(self):
        start = self.tok
        left = self.disj()
        if not self.at(*_CONDITIONALS):
            return left
        op = self.advance()
        right = self.formula()
        sig = self.sig
        if op.text == "=>":
            return F.SelImp(self.co(left, start, "the antecedent of =>"), right)
        if op.text == "->":
            return F.implies(sig, left, right)
        if op.text == "<->":
            return F.iff(sig, left, right)
        self.co(left, op, "the left operand of <=>")
        self.co(right, op, "the right operand of <=>")
        return F.equiv(left, right)

    def disj(self):
        left = self.conj()
        while self.at("\\/", "||"):
            op = self.advance()
            right = self.conj()
            if op.text == "||":
                left = F.GOr(left, right)
            else:
                self.co(left, op, "the left operand of \\/")
                self.co(right, op, "the right operand of \\/")
                left = F.lor(self.sig, left, right)
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.advance()
            left = F.And(left, self.unary())
        return left

    def unary(self):
        if self.at("~"):
            op = self.advance()
            return F.neg(self.sig, self.co(self.unary(), op, "the operand of ~"))
        if self.at("!"):
            self.advance()
            return F.neg_c(self.sig, self.unary())
        if self.at("["):
            spec = self.spec()
            return F.Cf(spec, self.unary())
        return self.atom()

    def spec(self) -> InterventionSpec:
        self.expect("[")
        pairs = []
        while True:
            var = self.variable()
            self.expect("=")
            pairs.append((var, self.value(var)))
            if self.at(","):
                self.advance()
                continue
            break
        self.expect("]")
        return InterventionSpec(pairs)

    def variable(self) -> str:
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected a variable, found {tok.text or 'end of input'!r}")
        if tok.text not in self.sig:
            raise self.error(f"unknown variable {tok.text!r}", tok, UnknownVariable)
        self.advance()
        return tok.text

    def value(self, var) -> str:
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected a value, found {tok.text or 'end of input'!r}")
        if tok.text not in self.sig.range_of(var):
            raise self.error(f"{tok.text!r} is not in the range of {var}", tok, ValueOutOfRange)
        self.advance()
        return tok.text

    def atom(self):
        tok = self.tok
        if self.at("("):
            self.advance()
            phi = self.formula()
            self.expect(")")
            return phi
        if tok.kind == "name" and tok.text == "TOP":
            self.advance()
            return F.top(self.sig)
        if tok.kind == "name" and tok.text == "BOT":
            self.advance()
            return F.bot(self.sig)
        if tok.kind == "name" and tok.text == "P" and self.tokens[self.i + 1].text == "(":
            return self.prob()
        if tok.kind == "name":
            var = self.variable()
            if self.at("="):
                self.advance()
                return F.Eq(var, self.value(var))
            if self.at("!="):
                self.advance()
                return F.Neq(var, self.value(var))
            raise self.error("expected '=' or '!=' after a variable")
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def prob_term(self):
        self.advance()  # P
        self.expect("(")
        tok = self.tok
        arg = self.co(self.formula(), tok, "the argument of P()")
        cond = None
        if self.at("|"):
            self.advance()
            tok = self.tok
            cond = self.co(self.formula(), tok, "the condition of P( | )")
        self.expect(")")
        return arg, cond

    def prob(self):
        arg, cond = self.prob_term()
        if self.at("\\/"):
            raise self.error("the operands of \\/ must be CO formulas, not probabilities",
                             cls=CoFragmentViolation)
        if not self.at(*_CMP_OPS):
            raise self.error("expected a comparison after P(...)")
        op = self.advance().text
        sig = self.sig
        if self.tok.kind == "name" and self.tok.text == "P" and self.tokens[self.i + 1].text == "(":
            other_tok = self.tok
            other, cond2 = self.prob_term()
            if cond != cond2:
                raise self.error("both sides of a comparison must share the same condition",
                                 other_tok)
            atom = {
                ">=": lambda: F.ProbCmp(arg, F.GE, other),
                ">": lambda: F.ProbCmp(arg, F.GT, other),
                "<=": lambda: F.ProbCmp(other, F.GE, arg),
                "<": lambda: F.ProbCmp(other, F.GT, arg),
                "=": lambda: F.And(F.ProbCmp(arg, F.GE, other), F.ProbCmp(other, F.GE, arg)),
                "!=": lambda: F.GOr(F.ProbCmp(arg, F.GT, other), F.ProbCmp(other, F.GT, arg)),
            }[op]()
        else:
            tok = self.tok
            if tok.kind != "name":
                raise self.error("expected a rational bound or P(...)")
            self.advance()
            eps = parse_rational(tok.text, tok.start, self.text)
            atom = {
                ">=": lambda: F.pr_ge(arg, eps),
                ">": lambda: F.pr_gt(arg, eps),
                "<=": lambda: F.pr_le(sig, arg, eps),
                "<": lambda: F.pr_lt(sig, arg, eps),
                "=": lambda: F.pr_eq(sig, arg, eps),
                "!=": lambda: F.pr_ne(sig, arg, eps),
            }[op]()
        return atom if cond is None else F.cond(cond, atom)
