"""Instance families: gap constructions, hardness reductions and random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .model import INF, Edge, Instance, Path, Triple, TripleSolution
from .paths import enumerate_paths, path_tau


def _unit_certificate(paths) -> TripleSolution:
    return TripleSolution(Triple(p, 1, 0, 1) for p in paths)


def gen_log_gap(r: int):
    """``r`` parallel ``(s, v)`` edges trading travel time for delay, then ``(v, d)``.

    Edge ``e{i}`` has travel time ``i`` and delay ``r - i``; ``T = r`` and
    ``gamma = r - 1``.  The certificate sends one unit into every path
    during ``[0, 1)``.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    edges = [Edge(f"e{i}", "s", "v", 1, i, r - i) for i in range(r)]
    edges.append(Edge("estar", "v", "d", 1, 0, 0))
    inst = Instance(("s", "v", "d"), edges, "s", "d", r, r - 1)
    # P^i runs over e_{r-i-1}
    paths = [Path((f"e{r - i - 1}", "estar")) for i in range(r)]
    return inst, _unit_certificate(paths)


def gen_linear_gap(r: int):
    """Two bundles of ``r`` parallel edges with unbounded delays, joined by ``(v1, v2)``."""
    if r < 2:
        raise ValueError("r must be at least 2")
    edges = [Edge(f"e1_{i}", "s", "v1", 1, i, INF) for i in range(r)]
    edges.append(Edge("estar", "v1", "v2", 1, 0, 0))
    edges += [Edge(f"e2_{i}", "v2", "d", 1, i, INF) for i in range(r)]
    inst = Instance(("s", "v1", "v2", "d"), edges, "s", "d", r, r - 1)
    paths = [Path((f"e1_{i}", "estar", f"e2_{r - i - 1}")) for i in range(r)]
    return inst, _unit_certificate(paths)


def gen_clique_reduction(vertices, edges, r: int):
    """Feasibility-check instance whose candidate is infeasible iff an ``r``-clique exists.

    ``vertices`` fixes the numbering ``1..n`` (vertex ``i`` gets delay
    ``2**i``); ``edges`` are pairs of vertices, and the first endpoint of
    each pair is where its candidate path enters the gadget.  The candidate
    sends rate 1 into every edge path during ``[0, 1)``.
    """
    vertices = list(vertices)
    edges = [tuple(e) for e in edges]
    if r < 3:
        raise ValueError("r must be at least 3")
    if len(edges) < len(vertices):
        raise ValueError("the graph needs at least as many edges as vertices")
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertices")
    num = {v: i + 1 for i, v in enumerate(vertices)}
    seen = set()
    for a, b in edges:
        if a not in num or b not in num or a == b:
            raise ValueError(f"invalid edge {(a, b)}")
        if frozenset((a, b)) in seen:
            raise ValueError(f"repeated edge {(a, b)}")
        seen.add(frozenset((a, b)))
    m = len(edges)
    n = len(vertices)
    T = 2 ** (m + 1) + 1

    V = ["s", "d0", "d1"]
    for i in range(1, n + 1):
        V += [f"v{i}l", f"v{i}r"]
    E = []
    for i in range(1, n + 1):
        E.append(Edge(f"x{i}", f"v{i}l", f"v{i}r", INF, 0, 2 ** i))
    for i in range(1, n + 1):
        E.append(Edge(f"o{i}", f"v{i}r", "d0", INF, 0, 0))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                E.append(Edge(f"b{i}_{j}", f"v{i}r", f"v{j}l", INF, 0, 0))
    E.append(Edge("cap", "d0", "d1", comb(r, 2) - 1, 0, 0))
    paths = []
    for k, (a, b) in enumerate(edges):
        i, j = num[a], num[b]
        tau = 2 ** (m + 1) - 2 ** i - 2 ** j
        E.append(Edge(f"src{k}_{i}", "s", f"v{i}l", INF, tau, 0))
        E.append(Edge(f"src{k}_{j}", "s", f"v{j}l", INF, tau, 0))
        paths.append(Path((f"src{k}_{i}", f"x{i}", f"b{i}_{j}", f"x{j}", f"o{j}", "cap")))
    inst = Instance(V, E, "s", "d1", T, r)
    return inst, _unit_certificate(paths)


def gen_disjoint_paths_reduction(vertices, arcs, s1, s2, d1, d2) -> Instance:
    """Integral-rate hardness instance built around a directed graph.

    Graph arcs get ``u = 1``, ``tau = 0``, ``delta = 2``; new terminals
    ``s`` and ``d`` are wired to the two pairs with the travel times that
    let only (s1, d1), (s1, d2) and (s2, d2) routes matter.  ``T = 2``,
    ``gamma = 1``.
    """
    vertices = [str(v) for v in vertices]
    terminals = [str(s1), str(s2), str(d1), str(d2)]
    if len(set(terminals)) != 4 or any(t not in vertices for t in terminals):
        raise ValueError("s1, s2, d1, d2 must be four distinct graph vertices")
    if "s" in vertices or "d" in vertices:
        raise ValueError("vertex names 's' and 'd' are reserved for the new terminals")
    s1, s2, d1, d2 = terminals
    E = [Edge(f"g{k}", str(a), str(b), 1, 0, 2) for k, (a, b) in enumerate(arcs)]
    E += [Edge("ss1", "s", s1, 1, 0, 2), Edge("ss2", "s", s2, 1, 1, 2),
          Edge("d1d", d1, "d", 1, 1, 2), Edge("d2d", d2, "d", 1, 0, 2)]
    return Instance(["s"] + vertices + ["d"], E, "s", "d", 2, 1)


@dataclass(frozen=True)
class StaticInstance:
    """A static robust max-flow instance: edges are ``(id, tail, head, capacity)``."""

    vertices: tuple
    edges: tuple
    s: str
    d: str
    gamma: int


def gen_static_embedding(static: StaticInstance) -> Instance:
    """Embed a static instance: ``T = 1``, no travel times, unbounded delays."""
    edges = [Edge(eid, tail, head, u, 0, INF) for eid, tail, head, u in static.edges]
    return Instance(static.vertices, edges, static.s, static.d, 1, static.gamma)


_CAPACITIES = (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2))


def random_instance(rng: random.Random, *, max_vertices: int = 5, max_edges: int = 8,
                    max_T: int = 5, max_gamma: int = 2, max_tau: int = 2,
                    delays=(0, 1, 2, 3, INF)) -> Instance:
    """Small random multigraph instance with an ``s``-``d`` edge chain guaranteed."""
    n = rng.randint(2, max_vertices)
    inner = [f"v{i}" for i in range(1, n - 1)]
    V = ["s"] + inner + ["d"]
    tails = ["s"] + inner
    heads = inner + ["d"]
    pairs = []
    chain = ["s"] + rng.sample(inner, rng.randint(0, len(inner))) + ["d"]
    pairs += list(zip(chain, chain[1:]))
    n_edges = rng.randint(len(pairs), max(len(pairs), max_edges))
    while len(pairs) < n_edges:
        a, b = rng.choice(tails), rng.choice(heads)
        if a != b:
            pairs.append((a, b))
    E = [Edge(f"e{k}", a, b, rng.choice(_CAPACITIES), rng.randint(0, max_tau),
              rng.choice(delays)) for k, (a, b) in enumerate(pairs)]
    return Instance(V, E, "s", "d", rng.randint(1, max_T), rng.randint(0, max_gamma))


def random_dag_instance(rng: random.Random, *, max_vertices: int = 6, max_edges: int = 10,
                        max_gamma: int = 2, max_tau: int = 2, max_delay: int = 3,
                        t_bounded: bool = True, slack: int = 1) -> Instance:
    """Random acyclic instance with finite delays.

    With ``t_bounded`` the horizon is the longest path under its worst
    scenario (plus up to ``slack``); otherwise it is the longest nominal path
    (plus up to ``slack``), which keeps every path within ``T``.
    """
    n = rng.randint(2, max_vertices)
    V = ["s"] + [f"v{i}" for i in range(1, n - 1)] + ["d"]
    pairs = list(zip(V, V[1:])) if rng.random() < 0.5 else [("s", "d")]
    target = rng.randint(len(pairs), max(len(pairs), max_edges))
    while len(pairs) < target:
        a, b = sorted(rng.sample(range(n), 2))
        pairs.append((V[a], V[b]))
    E = [Edge(f"e{k}", a, b, rng.choice(_CAPACITIES), rng.randint(0, max_tau),
              rng.randint(0, max_delay)) for k, (a, b) in enumerate(pairs)]
    gamma = rng.randint(0, max_gamma)
    probe = Instance(V, E, "s", "d", 1, gamma)
    longest = 0
    for p in enumerate_paths(probe):
        length = path_tau(p, probe)
        if t_bounded:
            length += sum(sorted((probe.edge(e).delta for e in p), reverse=True)[:gamma])
        longest = max(longest, length)
    return probe.replace(T=max(1, longest) + rng.randint(0, slack))
