"""Small reference models used in the documentation and tests."""

from __future__ import annotations

from .model import CausalMultiteam, FunctionComponent, Multiteam, Signature


def arithmetic_chain() -> CausalMultiteam:
    """Y = X + 1 and Z = X * Y over three rows, the middle one doubled."""
    sig = Signature({"X": "012", "Y": "123", "Z": ["0", "1", "2", "3", "4", "6"]})
    laws = FunctionComponent(sig, {
        "Y": {(x, z): int(x) + 1 for x in "012" for z in sig.range_of("Z")},
        "Z": {(x, y): int(x) * int(y) for x in "012" for y in "123"},
    })
    team = Multiteam(sig, {("0", "1", "0"): 1, ("1", "2", "2"): 2, ("2", "3", "6"): 1})
    return CausalMultiteam(team, laws)


def binary_signature(*names: str) -> Signature:
    return Signature({name: "01" for name in names or ("X", "Y")})


def correlated_pair() -> CausalMultiteam:
    """Two rows (X=0, Y=0) and (X=1, Y=1) with no laws."""
    sig = binary_signature("X", "Y")
    return CausalMultiteam(Multiteam(sig, [("0", "0"), ("1", "1")]))
