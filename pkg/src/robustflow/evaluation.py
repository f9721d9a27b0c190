"""Adversary evaluation, feasibility verification and unit-interval averaging."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .model import (
    DEFAULT_MAX_SCENARIOS, INF, CapExceeded, Instance, Path, Scenario,
    TemporallyRepeatedFlow, Triple, TripleSolution, enumerate_scenarios, scenario_count,
)
from .paths import capped_delay, delay_offsets, path_tau, scenario_delay

_ZERO = Fraction(0)


@dataclass(frozen=True)
class AdversaryReport:
    worst_scenario: Scenario
    robust_value: Fraction
    per_scenario_values: dict | None = None


@dataclass(frozen=True)
class Violation:
    edge: str
    t: int
    scenario: Scenario
    load: Fraction
    capacity: Fraction

    def record(self, inst: Instance) -> str:
        z = ",".join(self.scenario.ordered(inst))
        return f"violation e={self.edge} t={self.t} z={z} load={self.load} u={self.capacity}"


@dataclass(frozen=True)
class PiecewiseConstantFlow:
    """Per path, ``(breakpoint, rate)`` pairs; each rate holds until the next
    breakpoint, the last one until ``T``."""

    segments: dict = field(default_factory=dict)

    def pieces(self, p: Path, T: int):
        segs = self.segments[p]
        for k, (start, rate) in enumerate(segs):
            end = segs[k + 1][0] if k + 1 < len(segs) else Fraction(T)
            yield Fraction(start), end, Fraction(rate)


def _cutoff(p: Path, z: Scenario, inst: Instance) -> int:
    delay = scenario_delay(p, z, inst)
    if delay is INF:
        return 0
    return max(0, inst.T - path_tau(p, inst) - delay)


def _overlap(a, b, lo, hi):
    return max(_ZERO, Fraction(min(b, hi)) - Fraction(max(a, lo)))


def value_under_scenario(sol: TripleSolution, z: Scenario, inst: Instance) -> Fraction:
    """Flow that reaches the sink by ``T`` when the adversary plays ``z``."""
    total = _ZERO
    cut = {}
    for t in sol:
        c = cut.get(t.path)
        if c is None:
            c = cut[t.path] = _cutoff(t.path, z, inst)
        total += t.rate * _overlap(t.a, t.b, 0, c)
    return total


def _relevant_edges(paths, inst: Instance) -> list:
    """Edges worth delaying: on some used path and with a positive delay.

    Any scenario acts exactly like its restriction to these edges, and that
    restriction is itself admissible, so restricting loses no worst case.
    """
    used = set()
    for p in paths:
        used.update(p)
    return [e.id for e in inst.edges if e.id in used and (e.delta is INF or e.delta > 0)]


def _scenarios_for(paths, inst, max_scenarios, restrict):
    if not restrict:
        return enumerate_scenarios(inst, max_scenarios)
    return enumerate_scenarios(inst, max_scenarios, edges=_relevant_edges(paths, inst))


def _best(values: dict, inst: Instance) -> tuple:
    return min(values.items(), key=lambda kv: (kv[1], kv[0].sort_key(inst)))


def robust_value(sol: TripleSolution, inst: Instance, *, keep_all: bool = False,
                 max_scenarios: int = DEFAULT_MAX_SCENARIOS,
                 restrict: bool = True) -> AdversaryReport:
    """Exact worst case over all admissible scenarios.

    With ``restrict`` (the default) only delays on used, delayable edges are
    enumerated; ties go to the lexicographically smallest scenario.
    """
    values = {z: value_under_scenario(sol, z, inst)
              for z in _scenarios_for(sol.paths(), inst, max_scenarios, restrict)}
    z, v = _best(values, inst)
    return AdversaryReport(z, v, values if keep_all else None)


def tr_value_under_scenario(flow: TemporallyRepeatedFlow, z: Scenario,
                            inst: Instance) -> Fraction:
    total = _ZERO
    for p, x in flow.rates.items():
        total += x * ((inst.T - path_tau(p, inst)) - capped_delay(p, z, inst))
    return total


def robust_value_tr(flow: TemporallyRepeatedFlow, inst: Instance, *, keep_all: bool = False,
                    max_scenarios: int = DEFAULT_MAX_SCENARIOS,
                    restrict: bool = True) -> AdversaryReport:
    """Worst case of a temporally repeated flow, via capped delays."""
    for p in flow.rates:
        if path_tau(p, inst) > inst.T:
            raise ValueError(f"path {p} is longer than the horizon")
    values = {z: tr_value_under_scenario(flow, z, inst)
              for z in _scenarios_for(list(flow.rates), inst, max_scenarios, restrict)}
    z, v = _best(values, inst)
    return AdversaryReport(z, v, values if keep_all else None)


def greedy_adversary_tr(flow: TemporallyRepeatedFlow, inst: Instance) -> Scenario:
    """Delay the ``gamma`` edges with the largest ``delta_e * load_e``.

    Exact for instances with the T-bounded path length property and finite
    delays, where the adversary's problem is a selection over edges.
    """
    if any(e.delta is INF for e in inst.edges):
        raise ValueError("greedy adversary needs finite delays")
    loads = flow.edge_loads()
    weighted = []
    for e in inst.edges:
        w = e.delta * loads.get(e.id, _ZERO)
        if w > 0:
            weighted.append((-w, inst.edge_index[e.id], e.id))
    weighted.sort()
    return Scenario(eid for _, _, eid in weighted[:inst.gamma])


def _windows(sol: TripleSolution, z: Scenario, inst: Instance) -> dict:
    """Per edge, the list of (start, end, rate) entry windows under ``z``."""
    out = {}
    offsets = {}
    for tr in sol:
        off = offsets.get(tr.path)
        if off is None:
            off = offsets[tr.path] = delay_offsets(tr.path, z, inst)
        for eid, shift in off.items():
            if shift is None:
                continue
            out.setdefault(eid, []).append((tr.a + shift, tr.b + shift, tr.rate))
    return out


def _first_overload(windows, capacity, T):
    events = {}
    for a, b, f in windows:
        if a >= T:
            continue
        a = max(a, 0)
        events[a] = events.get(a, _ZERO) + f
        if b < T:
            events[b] = events.get(b, _ZERO) - f
    load = _ZERO
    for t in sorted(events):
        load += events[t]
        if load > capacity:
            return t, load
    return None


def verify_feasibility(sol: TripleSolution, inst: Instance, *,
                       max_scenarios: int = DEFAULT_MAX_SCENARIOS) -> Violation | None:
    """Brute-force capacity check over every scenario, edge and time in ``[0, T)``.

    Loads are step functions with integer breakpoints, so sweeping their
    breakpoints finds the earliest overloaded integer time.  Returns ``None``
    when feasible, else the first violation (scenarios in enumeration order,
    then edges in instance order).
    """
    finite = [e for e in inst.edges if e.capacity is not INF]
    if not finite:
        return None
    for z in _scenarios_for(sol.paths(), inst, max_scenarios, True):
        windows = _windows(sol, z, inst)
        for e in finite:
            w = windows.get(e.id)
            if not w:
                continue
            hit = _first_overload(w, e.capacity, inst.T)
            if hit is not None:
                return Violation(e.id, hit[0], z, hit[1], e.capacity)
    return None


def verify_feasibility_grid(sol: TripleSolution, inst: Instance, *,
                            max_checks: int = 10**7) -> Violation | None:
    """Literal grid check: every scenario, edge and integer ``t`` in ``[0, T)``."""
    n = scenario_count(len(inst.edges), inst.gamma) * len(inst.edges) * inst.T
    if n > max_checks:
        raise CapExceeded(f"{n} grid checks exceed the cap of {max_checks}")
    for z in enumerate_scenarios(inst):
        offs = {tr.path: delay_offsets(tr.path, z, inst) for tr in sol}
        for e in inst.edges:
            if e.capacity is INF:
                continue
            for t in range(inst.T):
                load = _ZERO
                for tr in sol:
                    shift = offs[tr.path].get(e.id)
                    if shift is not None and tr.a <= t - shift < tr.b:
                        load += tr.rate
                if load > e.capacity:
                    return Violation(e.id, t, z, load, e.capacity)
    return None


def check_tr_capacity(flow: TemporallyRepeatedFlow, inst: Instance) -> list:
    """Edges whose total path rate exceeds capacity (empty when feasible)."""
    return [eid for eid, load in flow.edge_loads().items()
            if inst.edge(eid).capacity is not INF and load > inst.edge(eid).capacity]


def merge_unit_rates(rates_by_path: dict) -> TripleSolution:
    """Turn per-path ``{i: rate on [i, i+1)}`` into triples, merging equal neighbours."""
    triples = []
    for p, rates in rates_by_path.items():
        start = prev = None
        current = None
        for i in sorted(k for k, v in rates.items() if v > 0):
            r = rates[i]
            if current is not None and i == prev + 1 and r == current:
                prev = i
                continue
            if current is not None:
                triples.append(Triple(p, current, start, prev + 1))
            start = prev = i
            current = r
        if current is not None:
            triples.append(Triple(p, current, start, prev + 1))
    return TripleSolution(triples)


def discretize(flow: PiecewiseConstantFlow, inst: Instance) -> TripleSolution:
    """Average each path's rate over every unit interval of ``[0, T)``."""
    out = {}
    for p in flow.segments:
        mass = {}
        for start, end, rate in flow.pieces(p, inst.T):
            if rate == 0 or end <= start:
                continue
            if start < 0 or end > inst.T:
                raise ValueError("flow support must lie in [0, T)")
            for a in range(floor(start), min(inst.T, -floor(-end))):
                piece = _overlap(start, end, a, a + 1)
                if piece:
                    mass[a] = mass.get(a, _ZERO) + rate * piece
        out[p] = mass
    return merge_unit_rates(out)


def pcf_value_under_scenario(flow: PiecewiseConstantFlow, z: Scenario,
                             inst: Instance) -> Fraction:
    total = _ZERO
    for p in flow.segments:
        c = _cutoff(p, z, inst)
        for start, end, rate in flow.pieces(p, inst.T):
            total += rate * _overlap(start, end, 0, c)
    return total


def pcf_robust_value(flow: PiecewiseConstantFlow, inst: Instance, *,
                     max_scenarios: int = DEFAULT_MAX_SCENARIOS) -> Fraction:
    """Robust value by direct integration of the piecewise-constant rates."""
    return min(pcf_value_under_scenario(flow, z, inst)
               for z in enumerate_scenarios(inst, max_scenarios))


def pcf_max_load_ratio(flow: PiecewiseConstantFlow, inst: Instance, *,
                       max_scenarios: int = DEFAULT_MAX_SCENARIOS) -> Fraction:
    """Largest ``load / capacity`` over all scenarios, edges and times in ``[0, T)``.

    The flow is feasible iff the ratio is at most 1.  Loads are evaluated on
    the shifted breakpoint grid of the input, where they are constant between
    consecutive points.
    """
    worst = _ZERO
    finite = {e.id: e.capacity for e in inst.edges if e.capacity is not INF}
    for z in enumerate_scenarios(inst, max_scenarios):
        per_edge = {}
        for p in flow.segments:
            for eid, shift in delay_offsets(p, z, inst).items():
                if shift is None or eid not in finite:
                    continue
                for start, end, rate in flow.pieces(p, inst.T):
                    if rate and end > start:
                        per_edge.setdefault(eid, []).append((start + shift, end + shift, rate))
        for eid, windows in per_edge.items():
            points = sorted({max(_ZERO, Fraction(a)) for a, _, _ in windows if a < inst.T})
            for t in points:
                load = sum((f for a, b, f in windows if a <= t < b), _ZERO)
                worst = max(worst, load / finite[eid])
    return worst
