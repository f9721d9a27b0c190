import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from robustflow import Edge, Instance, gen_linear_gap, gen_log_gap  # noqa: E402


def single_edge(T, gamma=1, tau=0, delta=1, u=1):
    return Instance(("s", "d"), [Edge("e", "s", "d", u, tau, delta)], "s", "d", T, gamma)


@pytest.fixture
def i3_log():
    return gen_log_gap(3)


@pytest.fixture
def i3_linear():
    return gen_linear_gap(3)
