"""Simple s-d path enumeration and per-path delay arithmetic."""

from __future__ import annotations

from dataclasses import dataclass

from .model import INF, CapExceeded, Instance, Path, Scenario

DEFAULT_MAX_PATHS = 10**6


@dataclass(frozen=True)
class PathMetrics:
    tau: int
    prefix_tau: dict
    suffix_tau: dict


def enumerate_paths(inst: Instance, max_tau: int | None = None,
                    max_paths: int = DEFAULT_MAX_PATHS) -> list:
    """All simple s-d paths, in lexicographic order of their edge positions.

    With ``max_tau`` given, only paths with total travel time at most
    ``max_tau`` are returned (partial walks are pruned as soon as they exceed
    it, since travel times are nonnegative).
    """
    found = []
    on_path = {inst.s}
    stack = []

    def dfs(v, tau):
        if v == inst.d:
            if len(found) >= max_paths:
                raise CapExceeded(
                    f"more than {max_paths} simple s-d paths; instance is beyond desk scale")
            found.append(Path(tuple(stack)))
            return
        for e in inst.out_edges.get(v, ()):
            if e.head in on_path:
                continue
            nt = tau + e.tau
            if max_tau is not None and nt > max_tau:
                continue
            on_path.add(e.head)
            stack.append(e.id)
            dfs(e.head, nt)
            stack.pop()
            on_path.discard(e.head)

    dfs(inst.s, 0)
    return found


def path_tau(p: Path, inst: Instance) -> int:
    return sum(inst.edge(e).tau for e in p)


def path_metrics(p: Path, inst: Instance) -> PathMetrics:
    total = path_tau(p, inst)
    prefix, suffix = {}, {}
    acc = 0
    for eid in p:
        prefix[eid] = acc
        suffix[eid] = total - acc
        acc += inst.edge(eid).tau
    return PathMetrics(total, prefix, suffix)


def is_valid_path(p: Path, inst: Instance) -> bool:
    if not p.edges or any(e not in inst.edge_by_id for e in p):
        return False
    edges = [inst.edge(e) for e in p]
    if edges[0].tail != inst.s or edges[-1].head != inst.d:
        return False
    if any(a.head != b.tail for a, b in zip(edges, edges[1:])):
        return False
    visited = [edges[0].tail] + [e.head for e in edges]
    return len(set(visited)) == len(visited)


def _add_delay(total, delta):
    if total is INF or delta is INF:
        return INF
    return total + delta


def scenario_delay(p: Path, z: Scenario, inst: Instance):
    """Total delay picked up along ``p`` under ``z``; ``INF`` if any delayed edge is unbounded."""
    total = 0
    for eid in p:
        if eid in z:
            total = _add_delay(total, inst.edge(eid).delta)
            if total is INF:
                return INF
    return total


def capped_delay(p: Path, z: Scenario, inst: Instance) -> int:
    """``min(delay, T - tau(P))``: the part of the dispatch window lost to ``z``."""
    window = inst.T - path_tau(p, inst)
    if window < 0:
        raise ValueError(f"path {p} is longer than the horizon")
    delay = scenario_delay(p, z, inst)
    return window if delay is INF else min(delay, window)


def prefix_delay(p: Path, eid: str, z: Scenario, inst: Instance):
    """Delay accumulated on ``p`` strictly before edge ``eid``."""
    if eid not in p:
        raise KeyError(f"edge {eid} is not on path {p}")
    total = 0
    for e in p:
        if e == eid:
            return total
        if e in z:
            total = _add_delay(total, inst.edge(e).delta)
    raise AssertionError("unreachable")


def departure_time(p: Path, eid: str, t, z: Scenario, inst: Instance):
    """Dispatch time at s of the particle on ``p`` entering ``eid`` at time ``t``.

    Returns ``None`` when the particle cannot have been dispatched at all
    (an unbounded delay precedes ``eid``).
    """
    delay = prefix_delay(p, eid, z, inst)
    if delay is INF:
        return None
    return t - path_metrics(p, inst).prefix_tau[eid] - delay


def delay_offsets(p: Path, z: Scenario, inst: Instance) -> dict:
    """Map edge id -> offset (prefix tau + prefix delay) on ``p`` under ``z``.

    Edges behind an unbounded delay map to ``None``.
    """
    out = {}
    acc = 0
    for eid in p:
        out[eid] = acc
        if acc is None:
            continue
        e = inst.edge(eid)
        step = e.tau
        if eid in z:
            if e.delta is INF:
                acc = None
                continue
            step += e.delta
        acc += step
    return out


def window(p: Path, inst: Instance) -> int:
    return inst.T - path_tau(p, inst)

