"""Structural instance parameters that control the temporally repeated gap."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .model import INF, Instance, Scenario, check_instance
from .paths import DEFAULT_MAX_PATHS, enumerate_paths, path_metrics, path_tau
from . import solvers


@dataclass(frozen=True)
class KReport:
    k: int
    per_edge: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    intervals: dict = field(default_factory=dict)


@dataclass(frozen=True)
class AnalysisReport:
    t_bounded: bool
    t_bounded_witness: tuple | None
    k: int
    k_per_edge: dict
    k_witnesses: dict
    eta: Fraction
    eta_witness: tuple | None
    gap: object = None
    asymptotic_bound: Fraction | None = None

    def record(self) -> str:
        def show(v):
            return "na" if v is None else str(v)

        return (f"report t_bounded={str(self.t_bounded).lower()} k={self.k} eta={self.eta} "
                f"gap={show(self.gap)} bound={show(self.asymptotic_bound)}")


def check_t_bounded(inst: Instance, max_paths: int = DEFAULT_MAX_PATHS):
    """Whether every path stays within ``T`` under every admissible scenario.

    The adversary's best move against a single path is to delay its
    ``gamma`` largest delays, so one check per path suffices.  Returns
    ``(True, None)`` or ``(False, (path, scenario))``.
    """
    for p in enumerate_paths(inst, max_paths=max_paths):
        tau = path_tau(p, inst)
        ranked = sorted(p, key=lambda eid: _delay_key(inst.edge(eid).delta), reverse=True)
        chosen = [eid for eid in ranked[:inst.gamma] if inst.edge(eid).delta != 0]
        total = tau
        for eid in chosen:
            delta = inst.edge(eid).delta
            total = INF if delta is INF or total is INF else total + delta
        if total is INF or total > inst.T:
            return False, (p, Scenario(chosen))
    return True, None


def _delay_key(delta):
    return (1, 0) if delta is INF else (0, delta)


def greedy_stable_set(intervals) -> list:
    """Maximum set of pairwise disjoint closed intervals, swept right to left.

    Repeatedly takes the interval with the rightmost left endpoint and drops
    everything meeting it (touching counts).  Returns the chosen intervals in
    selection order.
    """
    chosen = []
    remaining = sorted(intervals, key=lambda iv: iv[0], reverse=True)
    while remaining:
        pick = remaining[0]
        chosen.append(pick)
        remaining = [iv for iv in remaining[1:] if iv[1] < pick[0]]
    return chosen


def compute_k(inst: Instance, max_paths: int = DEFAULT_MAX_PATHS) -> KReport:
    """Coverability ``k``: the largest stable set over the per-edge interval graphs.

    Each path ``P`` through ``e`` with ``tau(P) <= T`` contributes the window
    ``[tau before e, T - tau from e on]``.  Witness times are the left
    endpoints picked by the sweep, in increasing order.
    """
    intervals = {}
    for p in enumerate_paths(inst, max_tau=inst.T, max_paths=max_paths):
        m = path_metrics(p, inst)
        for eid in p:
            intervals.setdefault(eid, []).append((m.prefix_tau[eid], inst.T - m.suffix_tau[eid]))
    per_edge, witnesses = {}, {}
    for e in inst.edges:
        ivs = intervals.get(e.id, [])
        chosen = greedy_stable_set(ivs)
        per_edge[e.id] = len(chosen)
        witnesses[e.id] = sorted(left for left, _ in chosen)
    k = max(per_edge.values(), default=0)
    return KReport(k, per_edge, witnesses, intervals)


def compute_eta(inst: Instance, max_paths: int = DEFAULT_MAX_PATHS):
    """Worst ratio of a path's window to what survives a partial cut.

    Only scenarios that leave part of the window alive count.  Returns
    ``(eta, witness)`` with witness ``(path, scenario)`` or ``None`` when
    ``eta == 1``.
    """
    best = Fraction(1)
    witness = None
    for p in enumerate_paths(inst, max_tau=inst.T - 1, max_paths=max_paths):
        window = inst.T - path_tau(p, inst)
        delayable = [eid for eid in p if inst.edge(eid).delta is not INF
                     and 0 < inst.edge(eid).delta < window]
        for size in range(1, min(inst.gamma, len(delayable)) + 1):
            for combo in combinations(delayable, size):
                delay = sum(inst.edge(eid).delta for eid in combo)
                if delay >= window:
                    continue
                ratio = Fraction(window, window - delay)
                if ratio > best:
                    best, witness = ratio, (p, Scenario(combo))
    return best, witness


def optimality_gap(inst: Instance, **caps):
    """General optimum over temporally repeated optimum.

    Returns ``INF`` when only the temporally repeated optimum vanishes and 1
    when both do.
    """
    tr = solvers.solve_tr_exact(inst, **caps).robust_value
    general = solvers.solve_general(inst, **caps).robust_value
    if tr == 0:
        return Fraction(1) if general == 0 else INF
    return general / tr


def loss_bound(inst: Instance) -> Fraction:
    """``gamma * max_e delta_e * u_e``: the most any scenario can destroy."""
    for e in inst.edges:
        if e.delta is INF or e.capacity is INF:
            raise ValueError(f"edge {e.id} has an unbounded delay or capacity")
    return inst.gamma * max((e.delta * e.capacity for e in inst.edges), default=Fraction(0))


def asymptotic_bound(inst: Instance, **caps) -> Fraction | None:
    """``F / (F - loss_bound)`` with ``F`` the nominal optimum; ``None`` if ``F <= loss_bound``."""
    lam = loss_bound(inst)
    if lam == 0:
        return Fraction(1)
    nominal = solvers.nominal_optimum(inst, **caps)
    if nominal <= lam:
        return None
    return nominal / (nominal - lam)


def analyze(inst: Instance, *, gap: bool = False, bound: bool = False, **caps) -> AnalysisReport:
    check_instance(inst)
    max_paths = caps.get("max_paths", DEFAULT_MAX_PATHS)
    tb, tb_witness = check_t_bounded(inst, max_paths)
    kr = compute_k(inst, max_paths)
    eta, eta_witness = compute_eta(inst, max_paths)
    g = optimality_gap(inst, **caps) if gap else None
    b = None
    if bound and all(e.delta is not INF and e.capacity is not INF for e in inst.edges):
        b = asymptotic_bound(inst, **caps)
    return AnalysisReport(tb, tb_witness, kr.k, kr.per_edge, kr.witnesses, eta, eta_witness, g, b)
