import itertools
import os
import random

import pytest
from hypothesis import HealthCheck, settings

from inducedpaths.graph import Graph, induced_subgraph, is_connected

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def brute_lip(g: Graph) -> int:
    """Longest induced path by scanning vertex subsets from the largest down."""
    for r in range(g.n, 0, -1):
        for s in itertools.combinations(range(g.n), r):
            h, _ = induced_subgraph(g, s)
            if h.num_edges == r - 1 and h.max_degree() <= 2 and is_connected(h):
                return r
    return 0


def brute_clique(g: Graph) -> int:
    for r in range(g.n, 0, -1):
        for s in itertools.combinations(range(g.n), r):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)):
                return r
    return 0


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def planted_ham_graph(rng: random.Random, n: int, p: float) -> tuple[Graph, tuple]:
    order = list(range(n))
    rng.shuffle(order)
    edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    edges |= {(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p}
    return Graph(n, edges), tuple(order)


@pytest.fixture
def rng():
    return random.Random(12345)
