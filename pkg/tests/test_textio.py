import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from robustflow import (
    INF, InvalidInstance, ParseError, Path, TemporallyRepeatedFlow, TripleSolution,
    format_instance, format_solution, gen_clique_reduction, gen_linear_gap, parse_instance,
    parse_solution,
)
from robustflow.generators import random_instance
from helpers import random_triples

GOOD = """\
# a two-edge line
instance T=3 gamma=1 s=s d=d
vertex s
vertex v   # middle
vertex d
edge a s v u=3/2 tau=1 delta=inf
edge b v d u=inf tau=0 delta=2
"""


def test_parse_instance():
    inst = parse_instance(GOOD)
    assert (inst.T, inst.gamma, inst.s, inst.d) == (3, 1, "s", "d")
    a, b = inst.edges
    assert (a.capacity, a.tau, a.delta) == (F(3, 2), 1, INF)
    assert (b.capacity, b.delta) == (INF, 2)


@pytest.mark.parametrize("text, lineno, msg", [
    ("vertex s\n", 1, "instance header"),
    ("instance T=3 gamma=1 s=s\n", 1, "missing field"),
    ("instance T=x gamma=1 s=s d=d\n", 1, "T must be an integer"),
    (GOOD + "edge c s d u=1/0 tau=0 delta=0\n", 8, "u must be"),
    (GOOD + "edge c s d u=1 tau=0\n", 8, "expected: edge"),
    (GOOD + "vertex w\n", 8, "precede"),
    (GOOD + "bogus\n", 8, "unknown record"),
    (GOOD + "edge c s d u=1 tau=0 speed=0\n", 8, "unknown field"),
])
def test_parse_errors_carry_line_numbers(text, lineno, msg):
    with pytest.raises(ParseError, match=msg) as info:
        parse_instance(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"line {lineno}:")


def test_invalid_instance_is_rejected_after_parsing():
    with pytest.raises(InvalidInstance):
        parse_instance("instance T=0 gamma=1 s=s d=d\nvertex s\nvertex d\n")
    assert parse_instance("instance T=0 gamma=1 s=s d=d\n", validate=False).T == 0


def test_parse_solutions():
    sol = parse_solution("triple path=a,b rate=1/2 a=0 b=2\n# note\n")
    assert isinstance(sol, TripleSolution) and sol.triples[0].path == Path(("a", "b"))
    flow = parse_solution("trpath path=a,b rate=2/3\n")
    assert flow == TemporallyRepeatedFlow({Path(("a", "b")): F(2, 3)})
    assert parse_solution("") == TripleSolution()


@pytest.mark.parametrize("text, msg", [
    ("triple path=a rate=1 a=2 b=2\n", "a < b"),
    ("triple path=a,,b rate=1 a=0 b=1\n", "malformed path"),
    ("triple path=a rate=-1 a=0 b=1\n", "nonnegative"),
    ("trpath path=a rate=1\ntriple path=a rate=1 a=0 b=1\n", "mixed"),
    ("trpath path=a rate=1\ntrpath path=a rate=2\n", "repeated path"),
])
def test_solution_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_solution(text)


def test_round_trip_generated_instances():
    cases = [gen_linear_gap(3), gen_clique_reduction([1, 2, 3], [(1, 2), (2, 3), (1, 3)], 3)]
    for inst, cert in cases:
        assert parse_instance(format_instance(inst)) == inst
        assert parse_solution(format_solution(cert)) == cert


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    assert parse_instance(format_instance(inst)) == inst
    sol = random_triples(rng, inst)
    assert parse_solution(format_solution(sol)) == sol
    flow = TemporallyRepeatedFlow({t.path: t.rate for t in sol})
    # an empty file reads back as the empty triple solution
    if flow.rates:
        assert parse_solution(format_solution(flow)) == flow
