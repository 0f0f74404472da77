"""Named graphs: the Fano plane and its Levi graph, the loops-on-a-tree family,
cycles, K4 and midpoint subdivisions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Edge, MultiGraph, genus

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


@dataclass(frozen=True)
class IncidenceStructure:
    points: tuple[str, ...]
    lines: tuple[tuple[str, frozenset[str]], ...]

    def lines_through(self, p: str) -> list[str]:
        return [name for name, pts in self.lines if p in pts]


def fano_plane() -> IncidenceStructure:
    points = tuple(f"p{i}" for i in range(1, 8))
    lines = tuple((f"l{i}", frozenset(f"p{p}" for p in pts)) for i, pts in enumerate(FANO_LINES, start=1))
    inc = IncidenceStructure(points, lines)
    _check_projective_plane(inc, order=2)
    return inc


def _check_projective_plane(inc: IncidenceStructure, order: int) -> None:
    n = order * order + order + 1
    k = order + 1
    if len(inc.points) != n or len(inc.lines) != n:
        raise AssertionError("wrong number of points or lines")
    if any(len(pts) != k for _, pts in inc.lines):
        raise AssertionError("a line has the wrong number of points")
    if any(len(inc.lines_through(p)) != k for p in inc.points):
        raise AssertionError("a point is on the wrong number of lines")
    for p, q in itertools.combinations(inc.points, 2):
        if sum(1 for _, pts in inc.lines if p in pts and q in pts) != 1:
            raise AssertionError(f"{p} and {q} do not span exactly one line")
    for (_, a), (_, b) in itertools.combinations(inc.lines, 2):
        if len(a & b) != 1:
            raise AssertionError("two lines do not meet in exactly one point")


def levi_graph(inc: IncidenceStructure) -> MultiGraph:
    """Point-line incidence graph; edges grouped by point, lines in declaration order."""
    vertices = list(inc.points) + [name for name, _ in inc.lines]
    edges = [Edge(f"{p}{name}", p, name) for p in inc.points for name, pts in inc.lines if p in pts]
    return MultiGraph(vertices, edges)


def heawood() -> MultiGraph:
    return levi_graph(fano_plane())


def cycle_graph(n: int) -> MultiGraph:
    if n < 1:
        raise ValueError("a cycle needs at least one vertex")
    vertices = [f"v{i}" for i in range(n)]
    edges = [Edge(f"e{i}", vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    return MultiGraph(vertices, edges)


def path_graph(n: int) -> MultiGraph:
    vertices = [f"v{i}" for i in range(n)]
    return MultiGraph(vertices, [Edge(f"e{i}", vertices[i], vertices[i + 1]) for i in range(n - 1)])


def star_graph(leaves: int) -> MultiGraph:
    vertices = ["o"] + [f"x{i}" for i in range(1, leaves + 1)]
    return MultiGraph(vertices, [Edge(f"t{i}", "o", f"x{i}") for i in range(1, leaves + 1)])


def complete_graph(n: int) -> MultiGraph:
    vertices = [f"v{i}" for i in range(n)]
    edges = [Edge(f"e{i}{j}", vertices[i], vertices[j]) for i, j in itertools.combinations(range(n), 2)]
    return MultiGraph(vertices, edges)


def loops_on_tree(tree: MultiGraph, leaves=None) -> MultiGraph:
    """Attach one loop at each leaf of ``tree``."""
    if genus(tree) != 0 or tree.has_loops():
        raise ValueError("input is not a tree")
    actual = [v for v in tree.vertices if tree.degree(v) == 1]
    if leaves is None:
        leaves = actual
    if set(leaves) != set(actual):
        raise ValueError("leaves must be exactly the degree-one vertices of the tree")
    extra = [Edge(f"loop_{v}", v, v) for v in tree.vertices if v in set(leaves)]
    return MultiGraph(tree.vertices, list(tree.edges) + extra)


def figure1() -> MultiGraph:
    """A star with three leaves and a loop at each leaf: trivalent, genus 3."""
    return loops_on_tree(star_graph(3))


def midpoint_subdivision(g: MultiGraph) -> tuple[MultiGraph, frozenset[str]]:
    vertices = list(g.vertices)
    edges = []
    for e in g.edges:
        mid = f"m_{e.id}"
        vertices.append(mid)
        edges.append(Edge(f"{e.id}a", e.u, mid))
        edges.append(Edge(f"{e.id}b", mid, e.v))
    return MultiGraph(vertices, edges), frozenset(g.vertices)


def loopless_model(g: MultiGraph) -> MultiGraph:
    """Put a midpoint on every loop, leaving other edges alone.

    Chip-firing cannot see a loop, so this is the discrete graph whose
    divisor theory matches the metric graph with its loops as circles.
    """
    vertices = list(g.vertices)
    edges = []
    for e in g.edges:
        if not e.is_loop:
            edges.append(e)
            continue
        mid = f"m_{e.id}"
        vertices.append(mid)
        edges += [Edge(f"{e.id}a", e.u, mid), Edge(f"{e.id}b", mid, e.v)]
    return MultiGraph(vertices, edges)


def by_name(name: str) -> MultiGraph:
    if name in ("heawood", "fano-levi"):
        return heawood()
    if name == "figure1":
        return figure1()
    if name == "k4":
        return complete_graph(4)
    if name == "k4-subdivided":
        return midpoint_subdivision(complete_graph(4))[0]
    if name.startswith("cycle:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad cycle length in {name!r}") from None
        return cycle_graph(n)
    raise ValueError(f"unknown catalog graph {name!r}")


CATALOG_NAMES = ("heawood", "fano-levi", "figure1", "cycle:<n>", "k4", "k4-subdivided")
