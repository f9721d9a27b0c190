"""Optimal robust temporally repeated flows and optimal general (triple) flows."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from . import lp
from .evaluation import _relevant_edges, merge_unit_rates
from .model import (
    DEFAULT_MAX_SCENARIOS, INF, Instance, Path, TemporallyRepeatedFlow, TripleSolution,
    check_instance, enumerate_scenarios,
)
from .paths import DEFAULT_MAX_PATHS, capped_delay, delay_offsets, enumerate_paths, path_tau, \
    scenario_delay

SCENARIO_ENUMERATION = "scenario_enumeration"
COMPACT_COLUMN_GENERATION = "compact_column_generation"

_ZERO = Fraction(0)


class UnboundedInstance(ValueError):
    """Some path carries unlimited flow that no scenario can fully cut."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class TrSolveResult:
    flow: TemporallyRepeatedFlow
    robust_value: Fraction
    mode: str
    duals: dict = field(default_factory=dict)
    lam: Fraction | None = None
    lps: tuple = ()
    iterations: int = 1


@dataclass(frozen=True)
class GeneralSolveResult:
    solution: TripleSolution
    robust_value: Fraction
    duals: dict = field(default_factory=dict)
    lps: tuple = ()

    @property
    def support_size(self) -> int:
        return len(self.solution.paths())


def _caps(kw):
    return (kw.get("max_paths", DEFAULT_MAX_PATHS),
            kw.get("max_scenarios", DEFAULT_MAX_SCENARIOS),
            kw.get("max_nonzeros", lp.DEFAULT_MAX_NONZEROS))


def _solve(problem, max_nonzeros):
    sol = lp.solve(problem, max_nonzeros=max_nonzeros)
    if sol.status == lp.UNBOUNDED:
        raise UnboundedInstance("the robust flow value is unbounded")
    if sol.status != lp.OPTIMAL:
        raise AssertionError(f"robust flow LP reported {sol.status}")
    return sol


def build_tr_lp(inst: Instance, paths, scenarios):
    """The scenario LP for temporally repeated flows.

    Variables: one rate per path, then the loss ``lam``.  Scenario rows with
    identical coefficients are merged; ``scenario_rows`` maps every scenario
    to the row that represents it.
    """
    problem = lp.LpProblem()
    for p in paths:
        problem.add_var(inst.T - path_tau(p, inst), name=f"x[{p}]")
    lam = problem.add_var(-1, name="lam")
    cap_rows = {}
    for e in inst.edges:
        if e.capacity is INF:
            continue
        coeffs = {j: 1 for j, p in enumerate(paths) if e.id in p}
        if coeffs:
            cap_rows[e.id] = problem.add_constraint(coeffs, lp.LE, e.capacity, name=f"cap[{e.id}]")
    seen = {}
    scenario_rows = {}
    for z in scenarios:
        coeffs = {}
        for j, p in enumerate(paths):
            c = capped_delay(p, z, inst)
            if c:
                coeffs[j] = c
        key = tuple(sorted(coeffs.items()))
        row = seen.get(key)
        if row is None:
            coeffs[lam] = -1
            name = "loss[" + ",".join(z.ordered(inst)) + "]"
            row = seen[key] = problem.add_constraint(coeffs, lp.LE, 0, name=name)
        scenario_rows[z] = row
    return problem, lam, cap_rows, scenario_rows


def solve_tr_exact(inst: Instance, **caps) -> TrSolveResult:
    """Optimal robust temporally repeated flow by enumerating every scenario.

    Works on arbitrary instances: delays are capped at each path's dispatch
    window, so unbounded delays simply wipe a path out.
    """
    check_instance(inst)
    max_paths, max_scenarios, max_nnz = _caps(caps)
    paths = enumerate_paths(inst, max_tau=inst.T - 1, max_paths=max_paths)
    scenarios = list(enumerate_scenarios(inst, max_scenarios,
                                         edges=_relevant_edges(paths, inst)))
    problem, lam, cap_rows, scenario_rows = build_tr_lp(inst, paths, scenarios)
    sol = _solve(problem, max_nnz)
    flow = TemporallyRepeatedFlow({p: sol.x[j] for j, p in enumerate(paths) if sol.x[j]})
    alpha = {e: sol.duals[r] for e, r in cap_rows.items()}
    rep = {}
    for z, r in scenario_rows.items():
        rep.setdefault(r, z)
    beta = {z: sol.duals[r] for r, z in rep.items()}
    return TrSolveResult(flow, sol.objective, SCENARIO_ENUMERATION,
                         {"alpha": alpha, "beta": beta}, sol.x[lam], ((problem, sol),))


def shortest_path(inst: Instance, cost: dict):
    """Dijkstra over edge costs (all nonnegative); returns ``(cost, Path)`` or ``None``."""
    order = {v: i for i, v in enumerate(inst.vertices)}
    dist = {inst.s: _ZERO}
    pred = {}
    heap = [(_ZERO, order[inst.s], inst.s)]
    done = set()
    while heap:
        dv, _, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == inst.d:
            break
        for e in inst.out_edges.get(v, ()):
            nd = dv + cost[e.id]
            if e.head not in dist or nd < dist[e.head]:
                dist[e.head] = nd
                pred[e.head] = e.id
                heapq.heappush(heap, (nd, order[e.head], e.head))
    if inst.d not in done:
        return None
    edges = []
    v = inst.d
    while v != inst.s:
        eid = pred[v]
        edges.append(eid)
        v = inst.edge(eid).tail
    return dist[inst.d], Path(tuple(reversed(edges)))


def _check_compact_preconditions(inst: Instance, caps):
    from .analysis import check_t_bounded

    for e in inst.edges:
        if e.delta is INF:
            raise PreconditionError(f"edge {e.id} has unbounded delay")
    bounded, witness = check_t_bounded(inst, max_paths=caps.get("max_paths", DEFAULT_MAX_PATHS))
    if not bounded:
        p, z = witness
        raise PreconditionError(
            f"instance is not T-bounded: path {p} under scenario "
            f"{{{','.join(z.ordered(inst))}}} takes longer than T={inst.T}")


def solve_tr_compact(inst: Instance, *, check: bool = True, max_iterations: int = 10_000,
                     **caps) -> TrSolveResult:
    """Column generation on the compact reformulation (T-bounded, finite delays).

    The restricted master carries one rate per pooled path plus the dual
    multipliers of the adversary's budget and per-edge bounds; pricing is a
    shortest path under ``alpha_e + beta_e * delta_e + tau_e``.
    """
    check_instance(inst)
    if check:
        _check_compact_preconditions(inst, caps)
    max_nnz = caps.get("max_nonzeros", lp.DEFAULT_MAX_NONZEROS)
    protected = [e for e in inst.edges if e.delta > 0]
    first = shortest_path(inst, {e.id: Fraction(e.tau) for e in inst.edges})
    pool = [first[1]] if first is not None and first[0] < inst.T else []
    if not pool:
        return TrSolveResult(TemporallyRepeatedFlow(), _ZERO, COMPACT_COLUMN_GENERATION,
                             {"alpha": {}, "beta": {}}, iterations=0)
    lps = []
    for iteration in range(1, max_iterations + 1):
        problem = lp.LpProblem()
        for p in pool:
            problem.add_var(inst.T - path_tau(p, inst), name=f"x[{p}]")
        g0 = problem.add_var(-inst.gamma, name="gamma0")
        ge = {e.id: problem.add_var(-1, name=f"gamma[{e.id}]") for e in protected}
        cap_rows, prot_rows = {}, {}
        for e in inst.edges:
            if e.capacity is INF:
                continue
            coeffs = {j: 1 for j, p in enumerate(pool) if e.id in p}
            if coeffs:
                cap_rows[e.id] = problem.add_constraint(coeffs, lp.LE, e.capacity,
                                                        name=f"cap[{e.id}]")
        for e in protected:
            coeffs = {j: e.delta for j, p in enumerate(pool) if e.id in p}
            if coeffs:
                coeffs[g0] = -1
                coeffs[ge[e.id]] = -1
                prot_rows[e.id] = problem.add_constraint(coeffs, lp.LE, 0, name=f"prot[{e.id}]")
        sol = _solve(problem, max_nnz)
        lps.append((problem, sol))
        alpha = {e.id: _ZERO for e in inst.edges}
        beta = {e.id: _ZERO for e in inst.edges}
        for eid, r in cap_rows.items():
            alpha[eid] = sol.duals[r]
        for eid, r in prot_rows.items():
            beta[eid] = sol.duals[r]
        cost = {e.id: alpha[e.id] + beta[e.id] * e.delta + e.tau for e in inst.edges}
        found = shortest_path(inst, cost)
        if found is None or found[0] >= inst.T:
            break
        if found[1] in pool:
            raise AssertionError("pricing returned a pooled path with negative reduced cost")
        pool.append(found[1])
    else:
        raise RuntimeError("column generation did not converge")
    flow = TemporallyRepeatedFlow({p: sol.x[j] for j, p in enumerate(pool) if sol.x[j]})
    return TrSolveResult(flow, sol.objective, COMPACT_COLUMN_GENERATION,
                         {"alpha": alpha, "beta": beta}, None, tuple(lps), iteration)


def build_general_lp(inst: Instance, paths, scenarios):
    """The time-indexed LP over unit dispatch intervals.

    Returns the problem, the ``(path, i) -> column`` map, the loss column and
    the representative row of every capacity triple ``(e, t, z)`` and scenario.
    Capacity rows over identical variable sets keep only the smallest
    capacity; rows without variables are dropped.
    """
    problem = lp.LpProblem()
    col = {}
    for p in paths:
        for i in range(inst.T - path_tau(p, inst)):
            col[p, i] = problem.add_var(1, name=f"x[{p}][{i}]")
    lam = problem.add_var(-1, name="lam")
    finite = {e.id: e.capacity for e in inst.edges if e.capacity is not INF}
    taus = {p: path_tau(p, inst) for p in paths}

    cap_terms = {}  # (eid, t, z) -> sorted var tuple
    loss_terms = {}
    for z in scenarios:
        per_edge = {}
        for p in paths:
            horizon = inst.T - taus[p]
            for eid, off in delay_offsets(p, z, inst).items():
                if off is None or eid not in finite:
                    continue
                slots = per_edge.setdefault(eid, {})
                for i in range(max(0, -off), min(horizon, inst.T - off)):
                    slots.setdefault(i + off, []).append(col[p, i])
        for eid, slots in per_edge.items():
            for t, vars_ in slots.items():
                cap_terms[eid, t, z] = tuple(sorted(vars_))
        lost = []
        for p in paths:
            delay = scenario_delay(p, z, inst)
            horizon = inst.T - taus[p]
            start = 0 if delay is INF else max(0, horizon - delay)
            lost.extend(col[p, i] for i in range(start, horizon))
        loss_terms[z] = tuple(sorted(lost))

    best = {}
    for key, vars_ in cap_terms.items():
        u = finite[key[0]]
        if vars_ not in best or u < best[vars_][0]:
            best[vars_] = (u, key)
    row_of = {}
    for vars_, (u, key) in best.items():
        eid, t, z = key
        name = f"cap[{eid}][{t}][" + ",".join(z.ordered(inst)) + "]"
        row_of[vars_] = problem.add_constraint({j: 1 for j in vars_}, lp.LE, u, name=name)
    cap_rows = {key: row_of[vars_] for key, vars_ in cap_terms.items()
                if best[vars_][1] == key}

    loss_row_of = {}
    scenario_rows = {}
    for z, vars_ in loss_terms.items():
        if vars_ not in loss_row_of:
            coeffs = {j: 1 for j in vars_}
            coeffs[lam] = -1
            name = "loss[" + ",".join(z.ordered(inst)) + "]"
            loss_row_of[vars_] = problem.add_constraint(coeffs, lp.LE, 0, name=name)
            scenario_rows[z] = loss_row_of[vars_]
    return problem, col, lam, cap_rows, scenario_rows


def solve_general(inst: Instance, **caps) -> GeneralSolveResult:
    """Optimal general robust flow, with dispatch intervals on the integer grid."""
    check_instance(inst)
    max_paths, max_scenarios, max_nnz = _caps(caps)
    paths = enumerate_paths(inst, max_tau=inst.T - 1, max_paths=max_paths)
    scenarios = list(enumerate_scenarios(inst, max_scenarios,
                                         edges=_relevant_edges(paths, inst)))
    problem, col, lam, cap_rows, scenario_rows = build_general_lp(inst, paths, scenarios)
    sol = _solve(problem, max_nnz)
    rates = {}
    for (p, i), j in col.items():
        if sol.x[j]:
            rates.setdefault(p, {})[i] = sol.x[j]
    solution = merge_unit_rates(rates)
    duals = {"alpha": {k: sol.duals[r] for k, r in cap_rows.items()},
             "beta": {z: sol.duals[r] for z, r in scenario_rows.items()}}
    return GeneralSolveResult(solution, sol.objective, duals, ((problem, sol),))


def nominal_optimum(inst: Instance, **caps) -> Fraction:
    """Best value without an adversary (``gamma = 0``)."""
    return solve_general(inst.replace(gamma=0), **caps).robust_value
