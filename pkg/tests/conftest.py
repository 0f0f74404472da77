import random
from fractions import Fraction

import pytest

from bnspecial.divisors import Divisor, dhar_unburnt, fire_set
from bnspecial.graph import Edge, MetricMultigraph, MultiGraph


def random_multigraph(rng: random.Random, max_vertices=6, max_genus=4, loops=False, min_vertices=1):
    """Connected multigraph: a random spanning tree plus extra edges (parallels allowed)."""
    n = rng.randint(min_vertices, max_vertices)
    vertices = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        edges.append((vertices[rng.randrange(i)], vertices[i]))
    for _ in range(rng.randint(0, max_genus)):
        a, b = rng.choice(vertices), rng.choice(vertices)
        if a == b and not loops:
            if n == 1:
                continue
            b = rng.choice([v for v in vertices if v != a])
        edges.append((a, b))
    return MultiGraph(vertices, [Edge(f"e{i}", a, b) for i, (a, b) in enumerate(edges)])


def random_bipartite(rng: random.Random, max_vertices=10, max_genus=4):
    """Connected bipartite multigraph with black vertices b* and white vertices w*."""
    nb = rng.randint(1, max_vertices // 2)
    nw = rng.randint(1, max_vertices - nb)
    black = [f"b{i}" for i in range(nb)]
    white = [f"w{i}" for i in range(nw)]
    rest = black[1:] + white[1:]
    rng.shuffle(rest)
    placed = [black[0], white[0]]
    edges = [(black[0], white[0])]
    for v in rest:
        partners = [u for u in placed if u[0] != v[0]]
        edges.append((rng.choice(partners), v))
        placed.append(v)
    for _ in range(rng.randint(0, max_genus)):
        edges.append((rng.choice(black), rng.choice(white)))
    return MultiGraph(placed, [Edge(f"e{i}", a, b) for i, (a, b) in enumerate(edges)])


def random_divisor(rng: random.Random, g: MultiGraph, low=-2, high=3) -> Divisor:
    return Divisor(g, {v: rng.randint(low, high) for v in g.vertices})


def random_lengths(rng: random.Random, g: MultiGraph, num=3, den=1) -> MetricMultigraph:
    return MetricMultigraph(g, {e.id: Fraction(rng.randint(1, num), rng.randint(1, den)) for e in g.edges})


def naive_reduce_nonneg(g: MultiGraph, d: Divisor, q: str) -> Divisor:
    """Textbook iterated Dhar on the full graph, one firing of the unburnt set at a time."""
    while True:
        s = dhar_unburnt(g, d, q)
        if not s:
            return d
        d = fire_set(d, s)


@pytest.fixture
def rng():
    return random.Random(20240611)
