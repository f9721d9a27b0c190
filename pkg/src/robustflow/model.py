"""Instance and solution types for robust maximum flows over time.

All numeric data is exact: capacities and rates are ``Fraction``, travel
times and delays are ``int``.  Unbounded capacities and delays use the
:data:`INF` sentinel, which deliberately supports no arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterator, Union

DEFAULT_MAX_SCENARIOS = 10**7


class CapExceeded(RuntimeError):
    """An enumeration would exceed its desk-scale cap."""


class InvalidInstance(ValueError):
    pass


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinite, ())


INF = _Infinite()

Capacity = Union[Fraction, _Infinite]
Delay = Union[int, _Infinite]


def is_inf(value) -> bool:
    return value is INF


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point data is not accepted; use Fraction or int")
    return Fraction(value)


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    capacity: Capacity = INF
    tau: int = 0
    delta: Delay = 0

    def __post_init__(self):
        if self.capacity is not INF:
            object.__setattr__(self, "capacity", as_fraction(self.capacity))


@dataclass(frozen=True)
class Instance:
    vertices: tuple
    edges: tuple
    s: str
    d: str
    T: int
    gamma: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @cached_property
    def edge_by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def edge_index(self) -> dict:
        """Position of each edge id in ``edges``; the canonical edge order."""
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out.setdefault(e.tail, []).append(e)
        return out

    def edge(self, eid: str) -> Edge:
        return self.edge_by_id[eid]

    def replace(self, **changes) -> "Instance":
        data = dict(vertices=self.vertices, edges=self.edges, s=self.s, d=self.d,
                    T=self.T, gamma=self.gamma)
        data.update(changes)
        return Instance(**data)


@dataclass(frozen=True, order=True)
class Path:
    """A simple s-d path given as its sequence of edge ids."""

    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    def __contains__(self, eid):
        return eid in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __str__(self):
        return ",".join(self.edges)


@dataclass(frozen=True)
class Scenario:
    """A set of delayed edge ids (the adversary's choice)."""

    delayed: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "delayed", frozenset(self.delayed))

    def __contains__(self, eid):
        return eid in self.delayed

    def __len__(self):
        return len(self.delayed)

    def __iter__(self):
        return iter(self.delayed)

    def sort_key(self, inst: Instance) -> tuple:
        """Order by size, then lexicographically by edge position."""
        return len(self.delayed), tuple(sorted(inst.edge_index[e] for e in self.delayed))

    def ordered(self, inst: Instance) -> tuple:
        return tuple(sorted(self.delayed, key=inst.edge_index.__getitem__))


EMPTY_SCENARIO = Scenario()


@dataclass(frozen=True)
class Triple:
    path: Path
    rate: Fraction
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "rate", as_fraction(self.rate))


@dataclass(frozen=True)
class TripleSolution:
    triples: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(self.triples))

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)

    def paths(self) -> list:
        seen = {}
        for t in self.triples:
            seen.setdefault(t.path, None)
        return list(seen)


@dataclass(frozen=True)
class TemporallyRepeatedFlow:
    """Constant rate ``x_P`` on each path, dispatched over ``[0, T - tau(P))``."""

    rates: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {p: as_fraction(x) for p, x in self.rates.items() if x != 0}
        object.__setattr__(self, "rates", clean)

    def __hash__(self):
        return hash(frozenset(self.rates.items()))

    def edge_loads(self) -> dict:
        loads = {}
        for p, x in self.rates.items():
            for e in p:
                loads[e] = loads.get(e, Fraction(0)) + x
        return loads

    def to_triples(self, inst: Instance) -> TripleSolution:
        triples = []
        for p, x in self.rates.items():
            tau = sum(inst.edge(e).tau for e in p)
            if tau < inst.T:
                triples.append(Triple(p, x, 0, inst.T - tau))
        return TripleSolution(triples)


def validate_instance(inst: Instance) -> list:
    """Return a list of human-readable invariant violations (empty when valid)."""
    problems = []
    verts = set(inst.vertices)
    if len(verts) != len(inst.vertices):
        problems.append("duplicate vertex ids")
    if inst.s not in verts:
        problems.append(f"source {inst.s} is not a declared vertex")
    if inst.d not in verts:
        problems.append(f"sink {inst.d} is not a declared vertex")
    if inst.s == inst.d:
        problems.append("source and sink coincide")
    if not isinstance(inst.T, int) or inst.T < 1:
        problems.append("horizon must be >= 1")
    if not isinstance(inst.gamma, int) or inst.gamma < 0:
        problems.append("budget gamma must be a nonnegative integer")
    seen = set()
    for e in inst.edges:
        if e.id in seen:
            problems.append(f"duplicate edge id {e.id}")
        seen.add(e.id)
        for end in (e.tail, e.head):
            if end not in verts:
                problems.append(f"edge {e.id} has undeclared endpoint {end}")
        if e.tail == inst.d:
            problems.append(f"sink has outgoing edge {e.id}")
        if e.capacity is not INF and not e.capacity > 0:
            problems.append(f"edge {e.id} capacity must be positive")
        if not isinstance(e.tau, int) or isinstance(e.tau, bool) or e.tau < 0:
            problems.append(f"edge {e.id} travel time must be a nonnegative integer")
        if e.delta is not INF and (not isinstance(e.delta, int) or isinstance(e.delta, bool)
                                   or e.delta < 0):
            problems.append(f"edge {e.id} delay must be a nonnegative integer or inf")
    return problems


def check_instance(inst: Instance) -> Instance:
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstance("; ".join(problems))
    return inst


def scenario_count(n_edges: int, gamma: int) -> int:
    return sum(comb(n_edges, j) for j in range(min(gamma, n_edges) + 1))


def enumerate_scenarios(inst: Instance, max_scenarios: int = DEFAULT_MAX_SCENARIOS,
                        edges=None) -> Iterator[Scenario]:
    """Yield every scenario with at most ``gamma`` delayed edges.

    Scenarios come out by size, then lexicographically in edge order.  Passing
    ``edges`` restricts the adversary to that subset of edge ids.
    """
    ids = [e.id for e in inst.edges] if edges is None else sorted(
        edges, key=inst.edge_index.__getitem__)
    total = scenario_count(len(ids), inst.gamma)
    if total > max_scenarios:
        raise CapExceeded(
            f"{total} scenarios exceed the cap of {max_scenarios}; "
            "instance is beyond desk scale")
    for size in range(min(inst.gamma, len(ids)) + 1):
        for combo in combinations(ids, size):
            yield Scenario(combo)
