"""Multigraphs and metric multigraphs.

Vertices are strings, edges carry string ids, loops and parallel edges are
allowed.  Every graph is connected; the constructor refuses anything else.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Mapping

from .errors import ResourceLimitError

INFINITE = math.inf
DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def ends(self) -> tuple[str, str]:
        return (self.u, self.v)

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x!r} is not an endpoint of edge {self.id!r}")


class MultiGraph:
    """Connected multigraph with ordered vertices and ordered, named edges."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple[str, str, str]]):
        self._vertices = tuple(vertices)
        self._edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        if not self._vertices:
            raise ValueError("a graph needs at least one vertex")
        if len(set(self._vertices)) != len(self._vertices):
            raise ValueError("duplicate vertex names")
        known = set(self._vertices)
        seen: set[str] = set()
        for e in self._edges:
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            for x in e.ends:
                if x not in known:
                    raise ValueError(f"edge {e.id!r} has unknown endpoint {x!r}")
        if not _is_connected(self._vertices, self._edges, frozenset()):
            raise ValueError("graph is not connected")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self._edges}

    @cached_property
    def _incidence(self) -> tuple[dict[str, list[tuple[Edge, str]]], dict[str, int]]:
        nbrs: dict[str, list[tuple[Edge, str]]] = {v: [] for v in self._vertices}
        loops: dict[str, int] = {v: 0 for v in self._vertices}
        for e in self._edges:
            if e.is_loop:
                loops[e.u] += 1
            else:
                nbrs[e.u].append((e, e.v))
                nbrs[e.v].append((e, e.u))
        return nbrs, loops

    def neighbors(self, v: str) -> list[tuple[Edge, str]]:
        """Non-loop incidences at ``v`` as (edge, other endpoint), in edge order."""
        return self._incidence[0][v]

    def loop_count(self, v: str) -> int:
        return self._incidence[1][v]

    def degree(self, v: str) -> int:
        return len(self._incidence[0][v]) + 2 * self._incidence[1][v]

    def is_trivalent(self) -> bool:
        return all(self.degree(v) == 3 for v in self._vertices)

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self._edges)


def _is_connected(vertices, edges, removed: frozenset) -> bool:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for e in edges:
        if e.id in removed or e.is_loop:
            continue
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    start = vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point lengths are not supported; use Fraction or a 'p/q' string")
    return Fraction(x)


class MetricMultigraph:
    """A multigraph together with a positive rational length on every edge."""

    def __init__(self, graph: MultiGraph, lengths: Mapping[str, Fraction | int | str] | None = None):
        self._graph = graph
        if lengths is None:
            lengths = {}
        unknown = set(lengths) - set(graph.edge_by_id)
        if unknown:
            raise ValueError(f"lengths given for unknown edges: {sorted(unknown)}")
        out: dict[str, Fraction] = {}
        for e in graph.edges:
            ell = _as_fraction(lengths.get(e.id, 1))
            if ell <= 0:
                raise ValueError(f"edge {e.id!r} has non-positive length {ell}")
            out[e.id] = ell
        self._lengths = out

    @classmethod
    def unit(cls, graph: MultiGraph) -> MetricMultigraph:
        return cls(graph, {})

    @property
    def graph(self) -> MultiGraph:
        return self._graph

    @property
    def lengths(self) -> dict[str, Fraction]:
        return dict(self._lengths)

    def length(self, edge_id: str) -> Fraction:
        return self._lengths[edge_id]

    def scaled(self, factor: Fraction | int) -> MetricMultigraph:
        factor = _as_fraction(factor)
        return MetricMultigraph(self._graph, {k: v * factor for k, v in self._lengths.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricMultigraph):
            return NotImplemented
        return self._graph == other._graph and self._lengths == other._lengths

    def __hash__(self) -> int:
        return hash((self._graph, tuple(self._lengths.items())))

    def __repr__(self) -> str:
        return f"MetricMultigraph({self._graph!r})"

    @cached_property
    def _subdivision(self):
        scaled, factor = rescale_to_integer_lengths(self)
        # a loop left at unit length would be invisible to chip-firing
        if any(e.is_loop and scaled.length(e.id) == 1 for e in self._graph.edges):
            scaled, factor = scaled.scaled(2), factor * 2
        sub, embedding = subdivide_uniform(scaled)
        return sub, embedding, factor


@dataclass(frozen=True)
class Bipartition:
    black: frozenset[str]
    white: frozenset[str]


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


def genus(g: MultiGraph) -> int:
    """First Betti number |E| - |V| + 1."""
    return len(g.edges) - len(g.vertices) + 1


def girth(g: MultiGraph) -> int | float:
    """Length of a shortest cycle; ``INFINITE`` for a tree."""
    if g.has_loops():
        return 1
    pairs = set()
    for e in g.edges:
        key = frozenset(e.ends)
        if key in pairs:
            return 2
        pairs.add(key)
    best = INFINITE
    for root in g.vertices:
        dist = {root: 0}
        via = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for e, y in g.neighbors(x):
                if e.id == via[x]:
                    continue
                if y in dist:
                    best = min(best, dist[x] + dist[y] + 1)
                else:
                    dist[y] = dist[x] + 1
                    via[y] = e.id
                    queue.append(y)
    return best


def bipartition(g: MultiGraph) -> Bipartition | None:
    """Two-colouring with the first vertex black, or None if none exists."""
    if g.has_loops():
        return None
    colour = {g.vertices[0]: 0}
    queue = deque([g.vertices[0]])
    while queue:
        x = queue.popleft()
        for _, y in g.neighbors(x):
            if y not in colour:
                colour[y] = 1 - colour[x]
                queue.append(y)
            elif colour[y] == colour[x]:
                return None
    black = frozenset(v for v in g.vertices if colour[v] == 0)
    return Bipartition(black, frozenset(g.vertices) - black)


def edge_connectivity(g: MultiGraph) -> int:
    """Smallest number of edges whose removal disconnects ``g``.

    Brute force over edge subsets of increasing size.  The cut around a vertex
    of minimum (loop-free) degree bounds the search.
    """
    if len(g.vertices) < 2:
        raise ValueError("edge connectivity is undefined for a single vertex")
    candidates = [e.id for e in g.edges if not e.is_loop]
    upper = min(len(g.neighbors(v)) for v in g.vertices)
    for k in range(1, upper):
        for subset in itertools.combinations(candidates, k):
            if not _is_connected(g.vertices, g.edges, frozenset(subset)):
                return k
    return upper


def enumerate_cycles(g: MultiGraph, cap: int = DEFAULT_CYCLE_CAP) -> list[Cycle]:
    """Every simple cycle once, up to rotation and reflection.

    A cycle is reported starting at its lowest-indexed vertex, oriented so that
    its first edge precedes its last edge in edge order.
    """
    out: list[Cycle] = []

    def emit(c: Cycle) -> None:
        if len(out) >= cap:
            raise ResourceLimitError(f"more than {cap} cycles")
        out.append(c)

    eidx = {e.id: i for i, e in enumerate(g.edges)}
    for e in g.edges:
        if e.is_loop:
            emit(Cycle((e.u, e.u), (e.id,)))
    index = g.index
    for s in g.vertices:
        si = index[s]
        path_v = [s]
        path_e: list[str] = []
        on_path = {s}
        stack = [iter(g.neighbors(s))]
        while stack:
            step = next(stack[-1], None)
            if step is None:
                stack.pop()
                if path_e:
                    path_e.pop()
                    on_path.discard(path_v.pop())
                continue
            e, y = step
            if path_e and e.id == path_e[-1]:
                continue
            if y == s:
                if path_e and eidx[path_e[0]] < eidx[e.id]:
                    emit(Cycle(tuple(path_v) + (s,), tuple(path_e) + (e.id,)))
                continue
            if index[y] < si or y in on_path:
                continue
            path_v.append(y)
            path_e.append(e.id)
            on_path.add(y)
            stack.append(iter(g.neighbors(y)))
    return out


def min_cycle_hits(g: MultiGraph, b: Iterable[str], cap: int = DEFAULT_CYCLE_CAP) -> int | float:
    """Fewest vertices of ``b`` on any cycle; ``INFINITE`` when ``g`` is a tree."""
    b = set(b)
    if not b <= set(g.vertices):
        raise ValueError("b must be a subset of the vertices")
    best = INFINITE
    for c in enumerate_cycles(g, cap):
        best = min(best, len(set(c.vertices) & b))
    return best


def rescale_to_integer_lengths(m: MetricMultigraph) -> tuple[MetricMultigraph, Fraction]:
    """Scale so all lengths are integers with gcd 1; return (scaled, factor)."""
    lengths = [m.length(e.id) for e in m.graph.edges]
    if not lengths:
        return m, Fraction(1)
    denom = reduce(math.lcm, (x.denominator for x in lengths), 1)
    common = reduce(math.gcd, (int(x * denom) for x in lengths), 0)
    factor = Fraction(denom, common)
    return m.scaled(factor), factor


def subdivision_vertex(edge_id: str, k: int) -> str:
    return f"{edge_id}~{k}"


def subdivide_uniform(m: MetricMultigraph) -> tuple[MultiGraph, dict[str, str]]:
    """Replace each edge of integer length l by a path of l unit edges.

    New vertices are named ``<edge id>~k`` (k = 1..l-1, counted from the first
    endpoint) and new edges ``<edge id>~ek``.  Unit edges keep their id.
    """
    g = m.graph
    vertices = list(g.vertices)
    edges: list[Edge] = []
    for e in g.edges:
        ell = m.length(e.id)
        if ell.denominator != 1:
            raise ValueError(f"edge {e.id!r} has non-integer length {ell}")
        n = int(ell)
        if n == 1:
            edges.append(e)
            continue
        chain = [e.u] + [subdivision_vertex(e.id, k) for k in range(1, n)] + [e.v]
        vertices.extend(chain[1:-1])
        for k in range(n):
            edges.append(Edge(f"{e.id}~e{k + 1}", chain[k], chain[k + 1]))
    if len(set(vertices)) != len(vertices):
        raise ValueError("subdivision vertex names collide with existing vertices")
    return MultiGraph(vertices, edges), {v: v for v in g.vertices}
