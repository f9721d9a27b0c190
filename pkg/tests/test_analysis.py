import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from robustflow import (
    INF, Edge, Instance, Scenario, analyze, asymptotic_bound, check_t_bounded, compute_eta,
    compute_k, optimality_gap,
)
from robustflow.analysis import greedy_stable_set, loss_bound
from robustflow.generators import random_dag_instance, random_instance
from conftest import single_edge
from oracles import HARMONIC, SINGLE_EDGE_BOUNDS, max_stable_set


def test_t_bounded(i3_log, i3_linear):
    assert check_t_bounded(i3_log[0]) == (True, None)
    ok, (p, z) = check_t_bounded(i3_linear[0])
    assert not ok and len(z) >= 1
    assert check_t_bounded(i3_log[0].replace(gamma=0)) == (True, None)
    # linear-gap paths run up to 2(r - 1) > T even without delays
    assert not check_t_bounded(i3_linear[0].replace(gamma=0))[0]


def test_t_bounded_witness_uses_largest_delays():
    E = [Edge("a", "s", "v", 1, 0, 1), Edge("b", "v", "d", 1, 0, 4)]
    inst = Instance(("s", "v", "d"), E, "s", "d", 3, 1)
    ok, (p, z) = check_t_bounded(inst)
    assert not ok and z == Scenario({"b"})


def test_k_on_the_figure_instances(i3_log, i3_linear):
    assert compute_k(i3_log[0]).k == 1
    rep = compute_k(i3_linear[0])
    assert rep.k == 2
    assert rep.per_edge["estar"] == 2
    assert rep.witnesses["estar"] == [1, 2]
    assert {(0, 1), (1, 2), (2, 3)} <= set(rep.intervals["estar"])


def test_k_keeps_point_intervals():
    inst = single_edge(2, tau=2)
    rep = compute_k(inst)
    assert rep.intervals["e"] == [(0, 0)] and rep.k == 1


def test_k_is_zero_without_paths():
    inst = Instance(("s", "d"), [Edge("e", "s", "d", 1, 5)], "s", "d", 2, 0)
    assert compute_k(inst).k == 0


def test_greedy_stable_set_touching_counts():
    assert len(greedy_stable_set([(0, 1), (1, 2), (2, 3)])) == 2
    assert greedy_stable_set([]) == []


intervals = st.lists(st.tuples(st.integers(0, 8), st.integers(0, 4)).map(
    lambda t: (t[0], t[0] + t[1])), max_size=12)


@settings(max_examples=200, deadline=None)
@given(intervals)
def test_greedy_stable_set_is_maximum(ivs):
    chosen = greedy_stable_set(ivs)
    assert len(chosen) == max_stable_set(ivs)
    assert all(a[1] < b[0] or b[1] < a[0] for i, a in enumerate(chosen) for b in chosen[i + 1:])


def test_dags_within_horizon_are_one_coverable():
    rng = random.Random(6)
    for _ in range(100):
        inst = random_dag_instance(rng, t_bounded=False, slack=2)
        assert compute_k(inst).k == 1


def test_eta(i3_log, i3_linear):
    assert compute_eta(i3_log[0]) == (1, None)
    assert compute_eta(i3_linear[0])[0] == 1
    eta, (p, z) = compute_eta(single_edge(3))
    assert eta == F(3, 2) and z == Scenario({"e"})
    assert compute_eta(single_edge(3, gamma=0)) == (1, None)


def test_eta_is_one_when_delays_always_cut_everything():
    rng = random.Random(9)
    for _ in range(100):
        inst = random_instance(rng, delays=(0, INF))
        assert compute_eta(inst)[0] == 1


def test_gap_values(i3_log, i3_linear):
    assert optimality_gap(i3_log[0]) == HARMONIC[3]
    assert optimality_gap(i3_linear[0]) == 3


def test_gap_conventions():
    assert optimality_gap(single_edge(3, delta=INF)) == 1
    rng = random.Random(2)
    for _ in range(20):
        inst = random_instance(rng).replace(gamma=0)
        assert optimality_gap(inst) == 1


def test_asymptotic_bound_examples():
    assert loss_bound(single_edge(10)) == 1
    for T, bound in SINGLE_EDGE_BOUNDS.items():
        assert asymptotic_bound(single_edge(T)) == bound
    assert asymptotic_bound(single_edge(10, gamma=0)) == 1
    assert asymptotic_bound(single_edge(1)) is None
    with pytest.raises(ValueError):
        asymptotic_bound(single_edge(10, delta=INF))


def test_gap_never_exceeds_the_bound():
    rng = random.Random(12)
    checked = 0
    for _ in range(80):
        inst = random_instance(rng, delays=(0, 1, 2), max_T=8)
        if any(e.capacity is INF for e in inst.edges):
            continue
        b = asymptotic_bound(inst)
        if b is not None:
            assert optimality_gap(inst) <= b
            checked += 1
    assert checked > 10


def test_gap_under_bound_on_a_three_edge_network():
    E = [Edge("a", "s", "d", 1, 0, 2), Edge("b", "s", "v", 2, 1, 1), Edge("c", "v", "d", 2, 0, 1)]
    base = Instance(("s", "v", "d"), E, "s", "d", 10, 1)
    bounds = []
    for T in (10, 100):
        inst = base.replace(T=T)
        bounds.append(asymptotic_bound(inst))
        assert optimality_gap(inst) <= bounds[-1]
    assert bounds[0] > bounds[1] > 1


def test_report_record(i3_log):
    rep = analyze(i3_log[0], gap=True)
    assert rep.record() == "report t_bounded=true k=1 eta=1 gap=11/6 bound=na"
    rep = analyze(single_edge(10), bound=True)
    assert rep.record() == "report t_bounded=true k=1 eta=10/9 gap=na bound=10/9"


def test_gap_convention_when_tr_vanishes(monkeypatch):
    from types import SimpleNamespace

    from robustflow import solvers

    monkeypatch.setattr(solvers, "solve_tr_exact", lambda inst, **kw: SimpleNamespace(robust_value=0))
    monkeypatch.setattr(solvers, "solve_general", lambda inst, **kw: SimpleNamespace(robust_value=1))
    assert optimality_gap(single_edge(3)) is INF
