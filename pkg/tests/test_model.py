from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from robustflow import (
    INF, CapExceeded, Edge, Instance, InvalidInstance, Path, Scenario, TemporallyRepeatedFlow,
    check_instance, enumerate_scenarios, validate_instance,
)
from robustflow.model import as_fraction, scenario_count


def line(T=3, gamma=1):
    return Instance(("s", "v", "d"), [Edge("a", "s", "v", 1, 1, 2), Edge("b", "v", "d", 2, 0, INF)],
                    "s", "d", T, gamma)


def test_valid_instance_has_no_problems():
    assert validate_instance(line()) == []


def test_horizon_zero_rejected():
    assert "horizon must be >= 1" in validate_instance(line(T=0))


def test_sink_out_edge_rejected():
    inst = Instance(("s", "d"), [Edge("e", "s", "d"), Edge("f", "d", "s")], "s", "d", 2, 0)
    assert "sink has outgoing edge f" in validate_instance(inst)
    with pytest.raises(InvalidInstance):
        check_instance(inst)


@pytest.mark.parametrize("edge, msg", [
    (Edge("e", "s", "d", 0), "capacity must be positive"),
    (Edge("e", "s", "d", 1, -1), "travel time"),
    (Edge("e", "s", "d", 1, 0, -2), "delay"),
    (Edge("e", "s", "x", 1), "undeclared endpoint"),
])
def test_bad_edges(edge, msg):
    inst = Instance(("s", "d"), [edge], "s", "d", 2, 0)
    assert any(msg in p for p in validate_instance(inst))


def test_duplicate_edge_ids():
    inst = Instance(("s", "d"), [Edge("e", "s", "d"), Edge("e", "s", "d")], "s", "d", 2, 0)
    assert "duplicate edge id e" in validate_instance(inst)


def test_parallel_edges_are_distinct():
    inst = Instance(("s", "d"), [Edge("p", "s", "d", 1), Edge("q", "s", "d", 2)], "s", "d", 2, 1)
    assert validate_instance(inst) == []
    assert inst.edge("p").capacity != inst.edge("q").capacity


def test_floats_refused():
    with pytest.raises(TypeError):
        Edge("e", "s", "d", 0.5)
    assert as_fraction(3) == Fraction(3)


def test_inf_is_a_singleton_without_arithmetic():
    import pickle

    assert pickle.loads(pickle.dumps(INF)) is INF
    with pytest.raises(TypeError):
        INF + 1


def test_scenarios_order_and_count():
    inst = line(gamma=2)
    zs = list(enumerate_scenarios(inst))
    assert zs == [Scenario(), Scenario({"a"}), Scenario({"b"}), Scenario({"a", "b"})]
    assert scenario_count(2, 2) == 4


def test_gamma_zero_single_scenario():
    assert list(enumerate_scenarios(line(gamma=0))) == [Scenario()]


def test_scenario_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_scenarios(line(gamma=2), max_scenarios=3))


def test_tr_flow_drops_zero_rates_and_sums_loads():
    p, q = Path(("a", "b")), Path(("b",))
    flow = TemporallyRepeatedFlow({p: Fraction(1, 2), q: 0})
    assert list(flow.rates) == [p]
    assert flow.edge_loads() == {"a": Fraction(1, 2), "b": Fraction(1, 2)}


def test_tr_to_triples_uses_dispatch_window():
    inst = line()
    flow = TemporallyRepeatedFlow({Path(("a", "b")): 1})
    (t,) = flow.to_triples(inst)
    assert (t.a, t.b) == (0, 2)


rationals = st.fractions(max_denominator=10**6)


@given(rationals, rationals)
def test_rational_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
