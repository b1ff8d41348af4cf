"""Signatures, multiteams, laws and causal multiteams.

Assignments are plain tuples of value symbols listed in signature order.
Value symbols are strings; integers passed to the constructors are
converted with ``str``.  Every object here is immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    CompatibilityViolation,
    ConstantFunction,
    CyclicLaws,
    InconsistentIntervention,
    NotEndogenous,
    RangeViolation,
    SignatureMismatch,
)

Row = tuple  # tuple[str, ...] in signature order

__all__ = [
    "Signature",
    "Multiteam",
    "FunctionComponent",
    "CausalMultiteam",
    "InterventionSpec",
    "CausalGraph",
    "validate_model",
    "parents",
    "causal_graph",
    "observe",
    "intervene",
    "sub_multiteam",
]


class Signature:
    """Ordered variables with finite, ordered, nonempty value ranges."""

    __slots__ = ("variables", "ranges", "_index", "_hash")

    def __init__(self, ranges: Mapping[str, Iterable] | Iterable[tuple[str, Iterable]]):
        items = list(ranges.items()) if isinstance(ranges, Mapping) else list(ranges)
        if not items:
            raise RangeViolation("a signature needs at least one variable")
        variables = tuple(str(v) for v, _ in items)
        if len(set(variables)) != len(variables):
            raise RangeViolation(f"duplicate variable names in {variables}")
        rngs = []
        for var, values in items:
            vals = tuple(str(x) for x in values)
            if not vals:
                raise RangeViolation(f"range of {var} is empty")
            if len(set(vals)) != len(vals):
                raise RangeViolation(f"range of {var} repeats a value")
            rngs.append(vals)
        self.variables = variables
        self.ranges = tuple(rngs)
        self._index = {v: i for i, v in enumerate(variables)}
        self._hash = hash((self.variables, self.ranges))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Signature):
            return NotImplemented
        return self.variables == other.variables and self.ranges == other.ranges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{v}: {list(r)}" for v, r in zip(self.variables, self.ranges))
        return f"Signature({{{inner}}})"

    def __len__(self):
        return len(self.variables)

    def __contains__(self, var):
        return var in self._index

    def index(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise RangeViolation(f"unknown variable {var!r}") from None

    def range_of(self, var: str) -> tuple[str, ...]:
        return self.ranges[self.index(var)]

    def others(self, var: str) -> tuple[str, ...]:
        """The tuple W_V: all variables but ``var``, in signature order."""
        return tuple(v for v in self.variables if v != var)

    def check_value(self, var: str, value) -> str:
        value = str(value)
        if value not in self.range_of(var):
            raise RangeViolation(f"value {value!r} is not in the range of {var}")
        return value

    def row(self, values: Mapping[str, object] | Sequence) -> Row:
        """Build (and range-check) an assignment from a mapping or a sequence."""
        if isinstance(values, Mapping):
            missing = [v for v in self.variables if v not in values]
            extra = [v for v in values if v not in self._index]
            if missing or extra:
                raise RangeViolation(f"assignment must bind exactly {self.variables}")
            values = [values[v] for v in self.variables]
        values = tuple(str(x) for x in values)
        if len(values) != len(self.variables):
            raise RangeViolation(
                f"assignment {values} has {len(values)} values, expected {len(self.variables)}"
            )
        for var, val, rng in zip(self.variables, values, self.ranges):
            if val not in rng:
                raise RangeViolation(f"value {val!r} is not in the range of {var}")
        return values

    def as_dict(self, row: Row) -> dict[str, str]:
        return dict(zip(self.variables, row))

    def assignments(self) -> Iterator[Row]:
        """All assignments of the signature, in lexicographic range order."""
        return itertools.product(*self.ranges)

    def n_assignments(self) -> int:
        n = 1
        for r in self.ranges:
            n *= len(r)
        return n


class InterventionSpec:
    """An ordered conjunction X1=x1 & ... & Xn=xn of equalities."""

    __slots__ = ("pairs", "_hash")

    def __init__(self, pairs: Iterable[tuple[str, object]] | Mapping[str, object]):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        pairs = tuple((str(v), str(x)) for v, x in pairs)
        if not pairs:
            raise InconsistentIntervention("an intervention needs at least one pair")
        self.pairs = pairs
        self._hash = hash(("spec", pairs))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, InterventionSpec):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "InterventionSpec(" + ", ".join(f"{v}={x}" for v, x in self.pairs) + ")"

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def variables(self) -> tuple[str, ...]:
        seen = dict.fromkeys(v for v, _ in self.pairs)
        return tuple(seen)

    @property
    def consistent(self) -> bool:
        bound = {}
        for var, val in self.pairs:
            if bound.setdefault(var, val) != val:
                return False
        return True

    def as_dict(self) -> dict[str, str]:
        if not self.consistent:
            raise InconsistentIntervention(f"{self!r} binds a variable to two values")
        return dict(self.pairs)

    def check(self, sig: Signature) -> None:
        for var, val in self.pairs:
            sig.check_value(var, val)


class Multiteam:
    """A finite multiset of assignments, stored as row -> multiplicity.

    ``rows`` is either a mapping from rows to multiplicities or an iterable
    of rows, each counted once.
    """

    __slots__ = ("signature", "counts", "items", "size", "_hash")

    def __init__(self, signature: Signature, rows: Mapping[Row, int] | Iterable = ()):
        pairs = rows.items() if isinstance(rows, Mapping) else ((row, 1) for row in rows)
        counts: dict[Row, int] = {}
        for row, k in pairs:
            row = signature.row(row)
            if not isinstance(k, int) or k < 0:
                raise RangeViolation(f"multiplicity of {row} must be a positive integer")
            if k:
                counts[row] = counts.get(row, 0) + k
        self._init(signature, counts)

    def _init(self, signature, counts):
        self.signature = signature
        self.items = tuple(sorted(counts.items()))
        self.counts = dict(self.items)
        self.size = sum(counts.values())
        self._hash = hash((signature, self.items))

    @classmethod
    def _trusted(cls, signature, counts: dict) -> "Multiteam":
        obj = cls.__new__(cls)
        obj._init(signature, counts)
        return obj

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Multiteam):
            return NotImplemented
        return self._hash == other._hash and self.signature == other.signature \
            and self.items == other.items

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.size

    def __bool__(self):
        return self.size > 0

    def __iter__(self):
        """Iterate distinct rows (use ``items`` for multiplicities)."""
        return iter(self.counts)

    def __repr__(self):
        rows = ", ".join(f"{row}x{k}" for row, k in self.items)
        return f"Multiteam([{rows}])"

    def includes(self, other: "Multiteam") -> bool:
        return all(self.counts.get(row, 0) >= k for row, k in other.items)


class FunctionComponent:
    """The laws F: one non-constant lookup table Ran(W_V) -> Ran(V) per endogenous V.

    Tables are keyed by tuples of W_V values (all variables except V, in
    signature order).  Construction checks totality, ranges, non-constancy
    and recursivity.
    """

    __slots__ = ("signature", "tables", "endogenous", "_parents", "_order",
                 "_key", "_hash", "_restrictions", "_inputs")

    def __init__(self, signature: Signature, tables: Mapping[str, Mapping] | None = None,
                 *, check_nonconstant: bool = True):
        tables = dict(tables or {})
        clean: dict[str, dict[tuple, str]] = {}
        for var in sorted(tables, key=signature.index):
            rng = signature.range_of(var)
            others = signature.others(var)
            domain = list(itertools.product(*(signature.range_of(w) for w in others)))
            given = {}
            for key, out in tables[var].items():
                if not isinstance(key, tuple):
                    key = (key,)
                key = tuple(str(x) for x in key)
                given[key] = str(out)
            table = {}
            for key in domain:
                if key not in given:
                    raise RangeViolation(f"law for {var} is missing the entry {key}")
                if given[key] not in rng:
                    raise RangeViolation(
                        f"law for {var} maps {key} to {given[key]!r}, outside its range"
                    )
                table[key] = given[key]
            if len(given) != len(domain):
                bad = next(k for k in given if k not in table)
                raise RangeViolation(f"law for {var} has an entry {bad} outside Ran(W_{var})")
            if check_nonconstant and len(set(table.values())) < 2:
                raise ConstantFunction(var)
            clean[var] = table
        self._setup(signature, clean)

    def _setup(self, signature, clean, parent_map=None):
        self.signature = signature
        self.tables = clean
        self.endogenous = frozenset(clean)
        if parent_map is None:
            parent_map = {v: _scan_parents(signature, v, t) for v, t in clean.items()}
        self._parents = parent_map
        try:
            order = list(TopologicalSorter(
                {v: set(p) & self.endogenous for v, p in parent_map.items()}
            ).static_order())
        except CycleError as exc:
            raise CyclicLaws(exc.args[1]) from None
        self._order = tuple(v for v in order if v in self.endogenous)
        self._key = tuple(
            (v, tuple(t[k] for k in sorted(t))) for v, t in
            sorted(clean.items(), key=lambda kv: signature.index(kv[0]))
        )
        self._hash = hash((signature, self._key))
        self._restrictions = {}
        idx = signature.index
        self._inputs = tuple(
            (idx(v), tuple(idx(w) for w in signature.others(v)), clean[v])
            for v in self._order
        )

    def restrict(self, removed: Iterable[str]) -> "FunctionComponent":
        """F restricted to End \\ removed (the laws after intervening on ``removed``)."""
        removed = frozenset(removed) & self.endogenous
        if not removed:
            return self
        cached = self._restrictions.get(removed)
        if cached is None:
            obj = FunctionComponent.__new__(FunctionComponent)
            keep = {v: t for v, t in self.tables.items() if v not in removed}
            obj._setup(self.signature, keep, {v: self._parents[v] for v in keep})
            self._restrictions[removed] = cached = obj
        return cached

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FunctionComponent):
            return NotImplemented
        return self._hash == other._hash and self.signature == other.signature \
            and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = ", ".join(
            f"{v}<-{sorted(self._parents[v], key=self.signature.index)}"
            for v in self._order
        )
        return f"FunctionComponent({parts})"

    def __call__(self, var: str, row: Row) -> str:
        """Evaluate F_var on the W_var part of a full assignment."""
        idx = self.signature.index
        key = tuple(row[idx(w)] for w in self.signature.others(var))
        return self.tables[var][key]

    def parents(self, var: str) -> frozenset[str]:
        if var not in self.endogenous:
            raise NotEndogenous(f"{var} is exogenous")
        return self._parents[var]

    @property
    def exogenous(self) -> tuple[str, ...]:
        return tuple(v for v in self.signature.variables if v not in self.endogenous)

    @property
    def topological_order(self) -> tuple[str, ...]:
        return self._order

    def compatible(self, row: Row) -> bool:
        return all(table[tuple(row[j] for j in ins)] == row[i]
                   for i, ins, table in self._inputs)

    def apply(self, spec: InterventionSpec, row: Row) -> Row:
        """The assignment s^F_{X=x}: overwrite X, recompute the other endogenous values."""
        return _apply_cached(self, spec, row)


def _scan_parents(sig: Signature, var: str, table: Mapping[tuple, str]) -> frozenset[str]:
    others = sig.others(var)
    found = set()
    for pos, name in enumerate(others):
        groups: dict[tuple, str] = {}
        for key, out in table.items():
            rest = key[:pos] + key[pos + 1:]
            prev = groups.setdefault(rest, out)
            if prev != out:
                found.add(name)
                break
    return frozenset(found)


@lru_cache(maxsize=1 << 18)
def _apply_cached(laws: FunctionComponent, spec: InterventionSpec, row: Row) -> Row:
    sig = laws.signature
    fixed = {sig.index(v): x for v, x in spec.as_dict().items()}
    new = list(row)
    for i, x in fixed.items():
        new[i] = x
    for i, ins, table in laws._inputs:
        if i not in fixed:
            new[i] = table[tuple(new[j] for j in ins)]
    return tuple(new)


class CausalMultiteam:
    """A pair (T^-, F) of a multiteam and laws over one signature."""

    __slots__ = ("team", "laws", "_hash")

    def __init__(self, team: Multiteam, laws: FunctionComponent | None = None):
        if laws is None:
            laws = FunctionComponent(team.signature)
        _check_compatible(team, laws)
        self._set(team, laws)

    def _set(self, team, laws):
        self.team = team
        self.laws = laws
        self._hash = hash((team, laws))

    @classmethod
    def unchecked(cls, team: Multiteam, laws: FunctionComponent) -> "CausalMultiteam":
        """Build without the compatibility check (fault injection, trusted internals)."""
        obj = cls.__new__(cls)
        obj._set(team, laws)
        return obj

    @property
    def signature(self) -> Signature:
        return self.team.signature

    def __len__(self):
        return self.team.size

    @property
    def empty(self) -> bool:
        return self.team.size == 0

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CausalMultiteam):
            return NotImplemented
        return self._hash == other._hash and self.team == other.team and self.laws == other.laws

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CausalMultiteam({self.team!r}, {self.laws!r})"

    def with_team(self, counts: dict) -> "CausalMultiteam":
        return CausalMultiteam.unchecked(Multiteam._trusted(self.signature, counts), self.laws)


def _check_compatible(team: Multiteam, laws: FunctionComponent) -> None:
    if team.signature != laws.signature:
        raise SignatureMismatch("team and laws have different signatures")
    for row in team.counts:
        for var in laws.topological_order:
            expected = laws(var, row)
            found = row[team.signature.index(var)]
            if expected != found:
                raise CompatibilityViolation(row, var, expected, found)


def validate_model(team: Multiteam | Mapping | Iterable, laws: FunctionComponent | Mapping | None,
                   sig: Signature) -> CausalMultiteam:
    """Check ranges, non-constancy, recursivity and compatibility; return the model."""
    if not isinstance(team, Multiteam):
        team = Multiteam(sig, team)
    if laws is None or not isinstance(laws, FunctionComponent):
        laws = FunctionComponent(sig, laws)
    if team.signature != sig or laws.signature != sig:
        raise SignatureMismatch("team, laws and signature must agree")
    return CausalMultiteam(team, laws)


def parents(laws: FunctionComponent, v: str) -> frozenset[str]:
    """PA_V: the non-dummy arguments of F_V."""
    return laws.parents(v)


@dataclass(frozen=True)
class CausalGraph:
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def successors(self, v):
        return {b for a, b in self.edges if a == v}

    def predecessors(self, v):
        return {a for a, b in self.edges if b == v}


def causal_graph(laws: FunctionComponent | CausalMultiteam) -> CausalGraph:
    if isinstance(laws, CausalMultiteam):
        laws = laws.laws
    edges = frozenset((p, v) for v in laws.endogenous for p in laws.parents(v))
    return CausalGraph(laws.signature.variables, edges)


def observe(model: CausalMultiteam, alpha) -> CausalMultiteam:
    """The sub-multiteam T^alpha of rows whose singleton satisfies the CO formula."""
    from .semantics import eval_co_at  # deferred: semantics imports this module
    from .formula import require_co

    require_co(alpha)
    keep = {row: k for row, k in model.team.items if eval_co_at(row, model.laws, alpha)}
    if len(keep) == len(model.team.counts):
        return model
    return model.with_team(keep)


def intervene(model: CausalMultiteam, spec: InterventionSpec | Mapping | Iterable) -> CausalMultiteam:
    """do(X=x): overwrite X, drop the laws of X, recompute descendants row by row."""
    if not isinstance(spec, InterventionSpec):
        spec = InterventionSpec(spec)
    spec.check(model.signature)
    if not spec.consistent:
        raise InconsistentIntervention(f"{spec!r} binds a variable to two values")
    return _intervene_cached(model, spec)


@lru_cache(maxsize=1 << 16)
def _intervene_cached(model: CausalMultiteam, spec: InterventionSpec) -> CausalMultiteam:
    laws = model.laws
    counts: dict[Row, int] = {}
    for row, k in model.team.items:
        image = _apply_cached(laws, spec, row)
        counts[image] = counts.get(image, 0) + k
    new_laws = laws.restrict(spec.variables)
    return CausalMultiteam.unchecked(Multiteam._trusted(model.signature, counts), new_laws)


def sub_multiteam(a: CausalMultiteam, b: CausalMultiteam) -> bool:
    """S <= T: same signature, multiplicity-wise inclusion, identical laws."""
    if a.signature != b.signature:
        raise SignatureMismatch("models have different signatures")
    return a.laws == b.laws and b.team.includes(a.team)
