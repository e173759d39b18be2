import random

import pytest

from braidtrace.tracegraph import build_trace_graph
from braidtrace.words import parse_word


@pytest.fixture(scope="session")
def borromean_graphs():
    g1 = build_trace_graph(parse_word("(s1 s2^-1)^3", 3))
    g2 = build_trace_graph(parse_word("s1^2 s2^2 s1^-2 s2^-2", 3))
    return g1, g2


@pytest.fixture()
def rng():
    return random.Random(1729)
