import random

import pytest
from hypothesis import settings

from balres.graph import random_balanced_digraph, random_positive_rational
from balres.io import load_example, parse_any, parse_graph
from balres.matrix import RMatrix

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def grid(spec):
    """(d, integer rows) -> RMatrix of rows / d."""
    d, rows = spec
    return RMatrix(rows) / d


def fuzz_cases(count, seed=2024, n_range=(2, 7), s_range=(1, 3)):
    """Deterministic (graph, a, b) triples for the property suites."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(*n_range)
        s = rng.randint(*s_range)
        g = random_balanced_digraph(n, s, rng.randint(1, 4), seed=rng.randrange(10**9))
        out.append((g, random_positive_rational(rng), random_positive_rational(rng)))
    return out


@pytest.fixture(scope="session")
def matrix_weighted():
    return parse_graph(load_example("matrix_weighted"))


@pytest.fixture(scope="session")
def scalar_digraph():
    return parse_graph(load_example("scalar_digraph"))


@pytest.fixture(scope="session")
def cycle4():
    return parse_any(load_example("cycle4"))

