"""Line-oriented text formats for signatures, models and atomic descriptions.

A file is split into sections, each opened by a line holding only the
section name.  ``#`` starts a comment.  Example::

    signature
    X: 0 1 2
    Y: 1 2 3
    laws
    Y <- 0 -> 1; 1 -> 2; 2 -> 3
    team
    1: 0 1
    2: 1 2

Law lines list ``w -> v`` entries where ``w`` is the tuple of values of all
other variables in signature order.  A law may be split across several
lines starting with the same ``V <-``.  Description files carry a
``weights`` section of ``v1 v2 ... : p/q`` lines instead of ``team``.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from ..errors import ParseError
from ..model import CausalMultiteam, FunctionComponent, Multiteam, Signature
from .printer import fraction_text

_SECTIONS = ("signature", "laws", "team", "weights")


class _Line:
    __slots__ = ("text", "offset", "source")

    def __init__(self, text, offset, source):
        self.text = text
        self.offset = offset
        self.source = source

    def error(self, message, start=None, end=None):
        lead = len(self.text) - len(self.text.lstrip())
        start = self.offset + (lead if start is None else start)
        end = self.offset + len(self.text.rstrip()) if end is None else self.offset + end
        return ParseError(message, start, end, self.source)

    def find(self, fragment, after=0):
        at = self.text.find(fragment, after)
        return max(at, 0)


def _sections(text: str, allowed) -> dict[str, list[_Line]]:
    sections: dict[str, list[_Line]] = {}
    current = None
    offset = 0
    for raw in text.splitlines(keepends=True):
        body = raw.split("#", 1)[0].rstrip("\r\n")
        line = _Line(body, offset, text)
        offset += len(raw)
        word = body.strip()
        if not word:
            continue
        if word in _SECTIONS:
            if word not in allowed:
                raise line.error(f"section {word!r} is not expected here")
            if word in sections:
                raise line.error(f"section {word!r} appears twice")
            current = sections[word] = []
            continue
        if current is None:
            raise line.error("content before the first section header")
        current.append(line)
    if "signature" not in sections:
        raise ParseError("missing 'signature' section", 0, 0, text)
    return sections


def _signature(lines: list[_Line]) -> Signature:
    ranges = []
    seen = set()
    for line in lines:
        name, colon, values = line.text.partition(":")
        name = name.strip()
        if not colon or not name or len(name.split()) != 1:
            raise line.error("expected 'VAR: v1 v2 ...'")
        if name in seen:
            raise line.error(f"variable {name!r} is declared twice")
        vals = values.split()
        if not vals:
            raise line.error(f"variable {name!r} has an empty range")
        if len(set(vals)) != len(vals):
            raise line.error(f"range of {name!r} repeats a value")
        seen.add(name)
        ranges.append((name, vals))
    if not ranges:
        raise ParseError("the signature declares no variables", 0, 0)
    return Signature(ranges)


def _laws(sig: Signature, lines: list[_Line]) -> FunctionComponent:
    tables: dict[str, dict[tuple, str]] = {}
    for line in lines:
        head, arrow, body = line.text.partition("<-")
        var = head.strip()
        if not arrow:
            raise line.error("expected 'V <- w -> v; ...'")
        if var not in sig:
            raise line.error(f"unknown variable {var!r}", line.find(var), line.find(var) + len(var))
        width = len(sig.others(var))
        table = tables.setdefault(var, {})
        pos = line.text.index("<-") + 2
        for entry in body.split(";"):
            start, pos = pos, pos + len(entry) + 1
            if not entry.strip():
                continue
            key, arrow, out = entry.partition("->")
            key, out = tuple(key.split()), out.split()
            if not arrow or len(out) != 1 or len(key) != width:
                raise line.error(
                    f"law entry for {var} needs {width} input value(s), '->' and one output",
                    start, pos - 1)
            if key in table:
                raise line.error(f"duplicate entry {key} in the law for {var}", start, pos - 1)
            table[key] = out[0]
    return FunctionComponent(sig, tables)


def _team(sig: Signature, lines: list[_Line]) -> Multiteam:
    counts: dict[tuple, int] = {}
    for line in lines:
        count, colon, values = line.text.partition(":")
        count = count.strip()
        if not colon or not count.isdigit() or int(count) < 1:
            raise line.error("expected 'count: v1 v2 ...' with a positive count")
        row = tuple(values.split())
        if len(row) != len(sig):
            raise line.error(f"row has {len(row)} value(s), the signature has {len(sig)}",
                             line.find(":") + 1)
        for var, value in zip(sig.variables, row):
            if value not in sig.range_of(var):
                at = line.find(value, line.find(":"))
                raise line.error(f"{value!r} is not in the range of {var}", at, at + len(value))
        counts[row] = counts.get(row, 0) + int(count)
    return Multiteam(sig, counts)


def _weights(sig: Signature, lines: list[_Line]) -> dict[tuple, Fraction]:
    weights: dict[tuple, Fraction] = {}
    for line in lines:
        values, colon, q = line.text.rpartition(":")
        row = tuple(values.split())
        if not colon or len(row) != len(sig):
            raise line.error(f"expected {len(sig)} value(s), ':' and a rational weight")
        try:
            weight = Fraction(q.strip())
        except (ValueError, ZeroDivisionError):
            at = line.text.rfind(":") + 1
            raise line.error(f"not a rational number: {q.strip()!r}", at) from None
        for var, value in zip(sig.variables, row):
            if value not in sig.range_of(var):
                at = line.find(value)
                raise line.error(f"{value!r} is not in the range of {var}", at, at + len(value))
        if row in weights:
            raise line.error(f"weight for {row} given twice")
        weights[row] = weight
    return weights


# -- public readers ---------------------------------------------------------


def parse_signature(text: str) -> Signature:
    sections = _sections(text, ("signature",))
    return _signature(sections["signature"])


def parse_model(text: str) -> CausalMultiteam:
    """Read a model file; all model invariants are validated."""
    sections = _sections(text, ("signature", "laws", "team"))
    sig = _signature(sections["signature"])
    laws = _laws(sig, sections.get("laws", []))
    team = _team(sig, sections.get("team", []))
    return CausalMultiteam(team, laws)


def parse_description(text: str):
    """Read an atomic description (signature, laws, weights)."""
    from ..canonical import AtomicDescription

    sections = _sections(text, ("signature", "laws", "weights"))
    sig = _signature(sections["signature"])
    laws = _laws(sig, sections.get("laws", []))
    weights = _weights(sig, sections.get("weights", []))
    return AtomicDescription(laws, weights)


# -- public writers ---------------------------------------------------------


def _signature_lines(sig: Signature) -> list[str]:
    return ["signature"] + [f"{v}: {' '.join(sig.range_of(v))}" for v in sig.variables]


def _law_lines(laws: FunctionComponent) -> list[str]:
    out = ["laws"]
    for var in sorted(laws.endogenous, key=laws.signature.index):
        entries = "; ".join(f"{' '.join(key)} -> {val}" for key, val in laws.tables[var].items())
        out.append(f"{var} <- {entries}")
    return out


def write_signature(sig: Signature) -> str:
    return "\n".join(_signature_lines(sig)) + "\n"


def write_model(model: CausalMultiteam) -> str:
    lines = _signature_lines(model.signature) + _law_lines(model.laws) + ["team"]
    lines += [f"{k}: {' '.join(row)}" for row, k in model.team.items]
    return "\n".join(lines) + "\n"


def write_description(desc) -> str:
    lines = _signature_lines(desc.signature) + _law_lines(desc.laws) + ["weights"]
    lines += [f"{' '.join(row)} : {fraction_text(w)}" for row, w in sorted(desc.weights.items())]
    return "\n".join(lines) + "\n"


# -- path helpers -----------------------------------------------------------


def read_signature(path) -> Signature:
    return parse_signature(Path(path).read_text(encoding="utf-8"))


def read_model(path) -> CausalMultiteam:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def read_description(path):
    return parse_description(Path(path).read_text(encoding="utf-8"))
