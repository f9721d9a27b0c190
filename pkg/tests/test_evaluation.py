import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from robustflow import (
    INF, Edge, Instance, Path, PiecewiseConstantFlow, Scenario, TemporallyRepeatedFlow, Triple,
    TripleSolution, discretize, gen_clique_reduction, greedy_adversary_tr, robust_value,
    robust_value_tr, value_under_scenario, verify_feasibility,
)
from robustflow.evaluation import (
    pcf_max_load_ratio, pcf_robust_value, tr_value_under_scenario, verify_feasibility_grid,
)
from robustflow.generators import random_instance
from robustflow.paths import path_tau, scenario_delay
from helpers import random_pcf, random_triples
from oracles import K3_VIOLATION_T, brute_robust_value, entry_times, grid_violation


def log_tr_flow():
    return TemporallyRepeatedFlow({Path(("e2", "estar")): F(6, 11), Path(("e1", "estar")): F(3, 11),
                                   Path(("e0", "estar")): F(2, 11)})


def test_log_gap_certificate_values(i3_log):
    inst, cert = i3_log
    assert value_under_scenario(cert, Scenario(), inst) == 3
    assert value_under_scenario(cert, Scenario({"e1", "e2"}), inst) == 1
    assert robust_value(cert, inst).robust_value == 1


def test_linear_gap_certificate_value(i3_linear):
    inst, cert = i3_linear
    assert robust_value(cert, inst).robust_value == 1


def test_empty_solution_is_worth_nothing(i3_log):
    assert robust_value(TripleSolution(), i3_log[0]).robust_value == 0


def test_infinite_delay_everywhere_kills_everything(i3_linear):
    inst, cert = i3_linear
    z = Scenario({"e1_0", "e1_1", "e1_2"})
    assert value_under_scenario(cert, z, inst.replace(gamma=3)) == 0


def test_log_gap_tr_flow_is_equalized(i3_log):
    inst, _ = i3_log
    rep = robust_value_tr(log_tr_flow(), inst, keep_all=True)
    assert rep.robust_value == F(6, 11)
    pairs = [z for z in rep.per_scenario_values if len(z) == 2 and "estar" not in z]
    assert len(pairs) == 3
    assert all(rep.per_scenario_values[z] == F(6, 11) for z in pairs)
    assert rep.worst_scenario == Scenario({"e0", "e1"})


def test_linear_gap_diagonal_tr_flow(i3_linear):
    inst, _ = i3_linear
    flow = TemporallyRepeatedFlow({Path((f"e1_{i}", "estar", f"e2_{2 - i}")): F(1, 3)
                                   for i in range(3)})
    assert robust_value_tr(flow, inst).robust_value == F(1, 3)


def test_tr_value_without_adversary(i3_log):
    inst, _ = i3_log
    flow = log_tr_flow()
    nominal = sum(x * (inst.T - path_tau(p, inst)) for p, x in flow.rates.items())
    assert robust_value_tr(flow, inst.replace(gamma=0)).robust_value == nominal


def test_greedy_adversary_on_log_gap(i3_log):
    inst, _ = i3_log
    z = greedy_adversary_tr(log_tr_flow(), inst)
    assert len(z) == 2 and "estar" not in z
    assert tr_value_under_scenario(log_tr_flow(), z, inst) == F(6, 11)


def test_greedy_adversary_single_loaded_path():
    E = [Edge("a", "s", "v", 1, 0, 1), Edge("b", "v", "d", 1, 0, 3), Edge("c", "s", "d", 1, 0, 5)]
    inst = Instance(("s", "v", "d"), E, "s", "d", 10, 1)
    flow = TemporallyRepeatedFlow({Path(("a", "b")): 1})
    assert greedy_adversary_tr(flow, inst) == Scenario({"b"})
    assert greedy_adversary_tr(flow, inst.replace(gamma=5)) == Scenario({"a", "b"})


def test_greedy_adversary_refuses_infinite_delay(i3_linear):
    with pytest.raises(ValueError):
        greedy_adversary_tr(TemporallyRepeatedFlow(), i3_linear[0])


def test_k3_candidate_violates_at_sixteen():
    inst, cand = gen_clique_reduction([1, 2, 3], [(1, 2), (2, 3), (1, 3)], 3)
    v = verify_feasibility(cand, inst)
    assert (v.edge, v.t, v.load, v.capacity) == ("cap", K3_VIOLATION_T, 3, 2)
    assert v.scenario == Scenario({"x1", "x2", "x3"})
    assert v.record(inst) == "violation e=cap t=16 z=x1,x2,x3 load=3 u=2"


def test_c4_candidate_is_feasible():
    inst, cand = gen_clique_reduction("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], 3)
    assert verify_feasibility(cand, inst) is None


def test_log_gap_certificate_is_feasible(i3_log):
    inst, cert = i3_log
    assert verify_feasibility(cert, inst) is None
    assert verify_feasibility_grid(cert, inst) is None


def test_capacity_after_horizon_is_ignored():
    inst = Instance(("s", "d"), [Edge("e", "s", "d", 1, 0, 5)], "s", "d", 2, 1)
    # the delayed copy would collide at t = 6, beyond T
    sol = TripleSolution([Triple(Path(("e",)), 1, 0, 1), Triple(Path(("e",)), 1, 1, 2)])
    assert verify_feasibility(sol, inst) is None


def test_discretize_examples():
    p = Path(("e",))
    inst = Instance(("s", "d"), [Edge("e", "s", "d", 5)], "s", "d", 4, 0)
    half = PiecewiseConstantFlow({p: [(0, 2), (F(1, 2), 0)]})
    assert list(discretize(half, inst)) == [Triple(p, 1, 0, 1)]
    aligned = PiecewiseConstantFlow({p: [(0, 3), (2, 0)]})
    assert list(discretize(aligned, inst)) == [Triple(p, 3, 0, 2)]
    third = PiecewiseConstantFlow({p: [(F(1, 3), 1), (F(5, 3), 0)]})
    assert list(discretize(third, inst)) == [Triple(p, F(2, 3), 0, 2)]


def test_capped_and_uncapped_cutoffs_agree():
    rng = random.Random(5)
    for _ in range(100):
        inst = random_instance(rng)
        sol = random_triples(rng, inst)
        flow = TemporallyRepeatedFlow({t.path: t.rate for t in sol
                                       if path_tau(t.path, inst) <= inst.T})
        for z in (Scenario(), Scenario(e.id for e in inst.edges[:inst.gamma])):
            direct = F(0)
            for p, x in flow.rates.items():
                d = scenario_delay(p, z, inst)
                if d is not INF:
                    direct += x * max(0, inst.T - path_tau(p, inst) - d)
            assert tr_value_under_scenario(flow, z, inst) == direct


def test_restricted_enumeration_matches_full():
    rng = random.Random(11)
    for _ in range(100):
        inst = random_instance(rng)
        sol = random_triples(rng, inst)
        a = robust_value(sol, inst)
        b = robust_value(sol, inst, restrict=False)
        assert (a.robust_value, a.worst_scenario) == (b.robust_value, b.worst_scenario)


seeds = st.integers(0, 10**9)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_robust_value_matches_brute_force(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    sol = random_triples(rng, inst)
    assert robust_value(sol, inst).robust_value == brute_robust_value(sol, inst)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_verifier_matches_grid_oracle(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    sol = random_triples(rng, inst)
    found = verify_feasibility(sol, inst)
    oracle = grid_violation(sol, inst)
    assert (found is None) == (oracle is None)
    if found is not None:
        load = sum((t.rate for t in sol
                    if (off := entry_times(t.path.edges, found.scenario.delayed, inst).get(found.edge))
                    is not None and t.a <= found.t - off < t.b), F(0))
        assert load == found.load > found.capacity


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_more_budget_never_helps_the_flow(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    sol = random_triples(rng, inst)
    more = inst.replace(gamma=inst.gamma + 1)
    assert robust_value(sol, more).robust_value <= robust_value(sol, inst).robust_value


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_discretize_preserves_value_and_feasibility(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    flow = random_pcf(rng, inst)
    ratio = pcf_max_load_ratio(flow, inst)
    if ratio > 1:
        flow = PiecewiseConstantFlow({p: [(a, r / ratio) for a, r in segs]
                                      for p, segs in flow.segments.items()})
    sol = discretize(flow, inst)
    assert robust_value(sol, inst).robust_value == pcf_robust_value(flow, inst)
    assert verify_feasibility(sol, inst) is None
