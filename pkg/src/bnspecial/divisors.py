"""Divisors, chip-firing, reduced divisors and Baker-Norine rank.

Reduction works in two phases.  Phase one makes the divisor nonnegative away
from the base vertex by firing breadth-first balls around it, outermost layer
first.  Phase two repeats Dhar's burning algorithm and fires the unburnt set
until nothing is left unburnt.  Phase two runs on a compressed view of the
graph in which maximal chains of degree-two vertices become single segments;
a firing then pushes chips along a whole segment at once, which is the same as
firing a nested sequence of sets in the full graph.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import FalsificationError, ResourceLimitError
from .graph import MetricMultigraph, MultiGraph, genus

DEFAULT_PROBE_CAP = 200_000
MAX_REDUCE_ROUNDS = 10**7


class Divisor:
    """Integer chip assignment on the vertices of a fixed graph."""

    __slots__ = ("_graph", "_coeffs")

    def __init__(self, graph: MultiGraph, coeffs: Mapping[str, int] | None = None):
        self._graph = graph
        clean: dict[str, int] = {}
        index = graph.index
        for v, c in (coeffs or {}).items():
            if v not in index:
                raise ValueError(f"unknown vertex {v!r}")
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient at {v!r} must be an integer")
            if c:
                clean[v] = clean.get(v, 0) + c
        self._coeffs = {v: c for v, c in clean.items() if c}

    @classmethod
    def from_vertices(cls, graph: MultiGraph, vertices: Iterable[str]) -> Divisor:
        coeffs: dict[str, int] = {}
        for v in vertices:
            coeffs[v] = coeffs.get(v, 0) + 1
        return cls(graph, coeffs)

    @property
    def graph(self) -> MultiGraph:
        return self._graph

    @property
    def degree(self) -> int:
        return sum(self._coeffs.values())

    def __getitem__(self, v: str) -> int:
        if v not in self._graph.index:
            raise KeyError(v)
        return self._coeffs.get(v, 0)

    def support(self) -> list[str]:
        return sorted(self._coeffs, key=self._graph.index.__getitem__)

    def items(self) -> list[tuple[str, int]]:
        return [(v, self._coeffs[v]) for v in self.support()]

    def as_dict(self) -> dict[str, int]:
        return dict(self.items())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    def _combine(self, other: Divisor, sign: int) -> Divisor:
        if other._graph is not self._graph and other._graph != self._graph:
            raise ValueError("divisors live on different graphs")
        out = dict(self._coeffs)
        for v, c in other._coeffs.items():
            out[v] = out.get(v, 0) + sign * c
        return Divisor(self._graph, out)

    def __add__(self, other: Divisor) -> Divisor:
        return self._combine(other, 1)

    def __sub__(self, other: Divisor) -> Divisor:
        return self._combine(other, -1)

    def __neg__(self) -> Divisor:
        return Divisor(self._graph, {v: -c for v, c in self._coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._coeffs == other._coeffs and self._graph == other._graph

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{v}: {c}" for v, c in self.items())
        return f"Divisor({{{body}}})"


def fire_set(d: Divisor, s: Iterable[str]) -> Divisor:
    """Fire every vertex of ``s`` once: one chip crosses each edge leaving ``s``."""
    g = d.graph
    s = set(s)
    if not s:
        raise ValueError("cannot fire the empty set")
    if not s <= set(g.vertices):
        raise ValueError("firing set contains unknown vertices")
    if len(s) == len(g.vertices):
        raise ValueError("firing every vertex is a no-op")
    out = d.as_dict()
    for e in g.edges:
        if e.is_loop:
            continue
        a, b = e.u in s, e.v in s
        if a and not b:
            out[e.u] = out.get(e.u, 0) - 1
            out[e.v] = out.get(e.v, 0) + 1
        elif b and not a:
            out[e.v] = out.get(e.v, 0) - 1
            out[e.u] = out.get(e.u, 0) + 1
    return Divisor(g, out)


def dhar_unburnt(g: MultiGraph, d: Divisor, q: str) -> set[str]:
    """Vertices left standing when a fire started at ``q`` spreads through ``g``.

    A vertex other than ``q`` catches fire once more of its edges are burning
    than it holds chips.  Loops never count.
    """
    if q not in g.index:
        raise ValueError(f"unknown vertex {q!r}")
    for v, c in d.items():
        if v != q and c < 0:
            raise ValueError(f"negative coefficient {c} at {v!r}; Dhar needs d >= 0 away from q")
    burnt = {q}
    hits: dict[str, int] = {}
    stack = [q]
    while stack:
        x = stack.pop()
        for _, y in g.neighbors(x):
            if y in burnt:
                continue
            hits[y] = hits.get(y, 0) + 1
            if hits[y] > d[y]:
                burnt.add(y)
                stack.append(y)
    return set(g.vertices) - burnt


def is_reduced(g: MultiGraph, d: Divisor, q: str) -> bool:
    if any(c < 0 for v, c in d.items() if v != q):
        return False
    return not dhar_unburnt(g, d, q)


# --- compressed view ---------------------------------------------------------


@dataclass
class _Chains:
    """Graph cut into segments between branch vertices.

    ``chains[i] = (a, b, interior)`` with ``interior`` the degree-two vertices
    from ``a`` to ``b``; the segment has ``len(interior) + 1`` unit edges.
    """

    branch: list[str]
    chains: list[tuple[str, str, tuple[str, ...]]]
    ends: dict[str, list[tuple[int, int]]]
    where: dict[str, tuple[int, int]] = field(default_factory=dict)


def _chains_for(g: MultiGraph, q: str) -> _Chains:
    cache = g.__dict__.setdefault("_chain_cache", {})
    if q in cache:
        return cache[q]
    branch_set = {v for v in g.vertices if v == q or g.degree(v) != 2 or g.loop_count(v)}
    branch = [v for v in g.vertices if v in branch_set]
    chains: list[tuple[str, str, tuple[str, ...]]] = []
    ends: dict[str, list[tuple[int, int]]] = {v: [] for v in branch}
    used: set[str] = set()
    for a in branch:
        for e, y in g.neighbors(a):
            if e.id in used:
                continue
            used.add(e.id)
            interior = []
            prev_edge, x = e, y
            while x not in branch_set:
                interior.append(x)
                (e1, y1), (e2, y2) = g.neighbors(x)
                nxt, y = (e2, y2) if e1.id == prev_edge.id else (e1, y1)
                used.add(nxt.id)
                prev_edge, x = nxt, y
            idx = len(chains)
            chains.append((a, x, tuple(interior)))
            ends[a].append((idx, 0))
            ends[x].append((idx, 1))
    where = {}
    for i, (_, _, interior) in enumerate(chains):
        for k, x in enumerate(interior, start=1):
            where[x] = (i, k)
    out = _Chains(branch, chains, ends, where)
    cache[q] = out
    return out


def _burn(cs: _Chains, bchips: dict[str, int], inner: list[dict[int, int]], q: str):
    n = len(cs.chains)
    entered = [[False, False] for _ in range(n)]
    full = [False] * n
    burnt = {q}
    hits: dict[str, int] = {}
    stack = [q]
    while stack:
        u = stack.pop()
        for c, side in cs.ends[u]:
            if full[c] or entered[c][side]:
                continue
            entered[c][side] = True
            chips = inner[c]
            if not chips:
                full[c] = True
                w = cs.chains[c][1 - side]
                if w not in burnt:
                    hits[w] = hits.get(w, 0) + 1
                    if hits[w] > bchips.get(w, 0):
                        burnt.add(w)
                        stack.append(w)
            elif entered[c][1 - side] and len(chips) == 1:
                (only,) = chips.values()
                if only == 1:
                    full[c] = True
    return burnt, entered, full


def _reduce_chains(cs: _Chains, bchips: dict[str, int], inner: list[dict[int, int]], q: str) -> int:
    """Phase two in place.  Returns the number of macro-firings."""
    rounds = 0
    script = 0
    while True:
        burnt, entered, full = _burn(cs, bchips, inner, q)
        # (source, chain, position, step) with step = -1 towards a, +1 towards b
        moves: list[tuple[str | None, int, int, int]] = []
        for w in cs.branch:
            if w in burnt:
                continue
            for c, side in cs.ends[w]:
                if full[c]:
                    length = len(cs.chains[c][2]) + 1
                    moves.append((w, c, 0 if side == 0 else length, 1 if side == 0 else -1))
        for c, chips in enumerate(inner):
            if full[c] or not chips:
                continue
            if entered[c][0]:
                moves.append((None, c, min(chips), -1))
            if entered[c][1]:
                moves.append((None, c, max(chips), 1))
        if not moves:
            if len(burnt) != len(cs.branch):
                raise AssertionError("unburnt branch vertices but nothing to fire")
            return rounds
        eps = min(pos if step < 0 else len(cs.chains[c][2]) + 1 - pos for _, c, pos, step in moves)
        for src, c, pos, step in moves:
            if src is not None:
                bchips[src] = bchips.get(src, 0) - 1
                if bchips[src] < 0:
                    raise AssertionError("illegal firing in Dhar phase")
            else:
                chips = inner[c]
                chips[pos] -= 1
                if chips[pos] < 0:
                    raise AssertionError("illegal firing in Dhar phase")
                if not chips[pos]:
                    del chips[pos]
            target = pos + step * eps
            a, b, interior = cs.chains[c]
            if target == 0:
                bchips[a] = bchips.get(a, 0) + 1
            elif target == len(interior) + 1:
                bchips[b] = bchips.get(b, 0) + 1
            else:
                inner[c][target] = inner[c].get(target, 0) + 1
        rounds += 1
        # progress: the cumulative firing script grows by at least one set firing per round
        script_next = script + eps
        if script_next <= script or rounds > MAX_REDUCE_ROUNDS:
            raise RuntimeError("Dhar phase failed to make progress")
        script = script_next


def _nonnegative_outside(g: MultiGraph, coeffs: dict[str, int], q: str) -> dict[str, int]:
    """Phase one: fire breadth-first balls around ``q`` until only ``q`` may be negative."""
    layer = {q: 0}
    layers = [[q]]
    queue = deque([q])
    while queue:
        x = queue.popleft()
        for _, y in g.neighbors(x):
            if y not in layer:
                layer[y] = layer[x] + 1
                if layer[y] == len(layers):
                    layers.append([])
                layers[layer[y]].append(y)
                queue.append(y)
    out = dict(coeffs)
    # the layer index strictly decreases, so this phase takes at most diameter steps
    for k in range(len(layers) - 1, 0, -1):
        need = 0
        for v in layers[k]:
            c = out.get(v, 0)
            if c < 0:
                inward = sum(1 for _, y in g.neighbors(v) if layer[y] == k - 1)
                need = max(need, -(c // inward))
        if not need:
            continue
        for v in layers[k]:
            for _, y in g.neighbors(v):
                if layer[y] == k - 1:
                    out[v] = out.get(v, 0) + need
                    out[y] = out.get(y, 0) - need
    return out


def reduce(g: MultiGraph, d: Divisor, q: str) -> Divisor:
    """The unique ``q``-reduced divisor linearly equivalent to ``d``."""
    if q not in g.index:
        raise ValueError(f"unknown vertex {q!r}")
    coeffs = d.as_dict()
    if any(c < 0 for v, c in coeffs.items() if v != q):
        coeffs = _nonnegative_outside(g, coeffs, q)
    cs = _chains_for(g, q)
    bchips: dict[str, int] = {}
    inner: list[dict[int, int]] = [{} for _ in cs.chains]
    for v, c in coeffs.items():
        if not c:
            continue
        loc = cs.where.get(v)
        if loc is None:
            bchips[v] = c
        else:
            inner[loc[0]][loc[1]] = c
    _reduce_chains(cs, bchips, inner, q)
    out = {v: c for v, c in bchips.items() if c}
    for (a, b, interior), chips in zip(cs.chains, inner):
        for k, c in chips.items():
            out[interior[k - 1]] = c
    return Divisor(g, out)


def is_equivalent(g: MultiGraph, d1: Divisor, d2: Divisor) -> bool:
    if d1.degree != d2.degree:
        return False
    q0 = g.vertices[0]
    return reduce(g, d1, q0) == reduce(g, d2, q0)


def effective_in_class(g: MultiGraph, d: Divisor, q: str | None = None) -> Divisor | None:
    """An effective divisor equivalent to ``d``, or None when the class has none."""
    if d.degree < 0:
        return None
    if q is None:
        q = g.vertices[0]
    r = reduce(g, d, q)
    return r if r[q] >= 0 else None


def canonical_divisor(g: MultiGraph) -> Divisor:
    return Divisor(g, {v: g.degree(v) - 2 for v in g.vertices})


# --- rank --------------------------------------------------------------------


@dataclass
class UpperWitness:
    probe: Divisor
    reduced_form: Divisor
    base_vertex: str


@dataclass
class RankResult:
    """Rank of ``divisor`` on ``graph`` with re-checkable witnesses.

    ``lower_witnesses`` pairs every probe of degree ``rank`` with an effective
    divisor equivalent to ``divisor - probe``.  ``upper_witness`` holds a probe
    of degree ``rank + 1`` and the reduced form of ``divisor - probe`` at a base
    vertex where it is negative.  For metric ranks ``graph`` is the uniform
    subdivision the computation ran on.
    """

    rank: int
    graph: MultiGraph
    divisor: Divisor
    lower_witnesses: list[tuple[Divisor, Divisor]]
    upper_witness: UpperWitness | None
    probe_set: tuple[str, ...] | None = None
    method: str = "dhar"

    def verify(self) -> bool:
        g, d = self.graph, self.divisor
        for probe, eff in self.lower_witnesses:
            if probe.degree != self.rank or not probe.is_effective() or not eff.is_effective():
                return False
            if not is_equivalent(g, d - probe, eff):
                return False
        if self.upper_witness is None:
            return self.method != "dhar"
        w = self.upper_witness
        if w.probe.degree != self.rank + 1 or not w.probe.is_effective():
            return False
        return (
            w.reduced_form[w.base_vertex] < 0
            and is_reduced(g, w.reduced_form, w.base_vertex)
            and is_equivalent(g, d - w.probe, w.reduced_form)
        )

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "method": self.method,
            "divisor": self.divisor.as_dict(),
            "probe_set": list(self.probe_set) if self.probe_set is not None else None,
            "lower_witnesses": [
                {"probe": p.as_dict(), "effective_equivalent": e.as_dict()} for p, e in self.lower_witnesses
            ],
            "upper_witness": None,
        }
        if self.upper_witness is not None:
            w = self.upper_witness
            out["upper_witness"] = {
                "probe": w.probe.as_dict(),
                "reduced_form": w.reduced_form.as_dict(),
                "base_vertex": w.base_vertex,
            }
        return out


def _base_for(d: Divisor, q0: str) -> str:
    for v, c in d.items():
        if c < 0:
            return v
    return q0


def _probe_count(n: int, r: int) -> int:
    return math.comb(n + r - 1, r) if r > 0 else 1


def _rank_search(g: MultiGraph, d: Divisor, probes: tuple[str, ...], probe_cap: int,
                 method: str = "dhar") -> RankResult:
    q0 = g.vertices[0]
    r = 0
    last_lower: list[tuple[Divisor, Divisor]] = []
    while True:
        if r > 0 and r > d.degree:
            # D - E has negative degree for every probe; the first one is the witness
            probe = Divisor.from_vertices(g, [probes[0]] * r)
            q = _base_for(d - probe, q0)
            upper = UpperWitness(probe, reduce(g, d - probe, q), q)
            return RankResult(r - 1, g, d, last_lower, upper, probes, method)
        count = _probe_count(len(probes), r)
        if count > probe_cap:
            raise ResourceLimitError(f"{count} probes of degree {r} exceed the cap of {probe_cap}")
        lower: list[tuple[Divisor, Divisor]] = []
        for combo in itertools.combinations_with_replacement(probes, r):
            probe = Divisor.from_vertices(g, combo)
            rest = d - probe
            q = _base_for(rest, q0)
            red = reduce(g, rest, q)
            if red[q] < 0:
                return RankResult(r - 1, g, d, last_lower, UpperWitness(probe, red, q), probes, method)
            lower.append((probe, red))
        last_lower = lower
        r += 1


def rank_discrete(g: MultiGraph, d: Divisor, *, probe_cap: int = DEFAULT_PROBE_CAP,
                  riemann_roch_shortcut: bool = False, verify: bool = False) -> RankResult:
    """Baker-Norine rank by exhaustive probing over vertex-supported divisors.

    With ``riemann_roch_shortcut`` a divisor of degree above 2g - 2 gets rank
    ``deg - g`` without search; ``verify`` then recomputes it in full.
    """
    if d.graph != g:
        raise ValueError("divisor lives on a different graph")
    g_ = genus(g)
    if riemann_roch_shortcut and d.degree > 2 * g_ - 2:
        result = RankResult(d.degree - g_, g, d, [], None, tuple(g.vertices), "riemann-roch")
        if verify:
            full = _rank_search(g, d, tuple(g.vertices), probe_cap)
            if full.rank != result.rank:
                raise FalsificationError(
                    "Riemann-Roch shortcut disagrees with exhaustive rank",
                    {"shortcut": result.rank, "exhaustive": full.rank, "divisor": d.as_dict()},
                )
        return result
    return _rank_search(g, d, tuple(g.vertices), probe_cap)


def subdivided(m: MetricMultigraph) -> tuple[MultiGraph, dict[str, str]]:
    """Uniform unit subdivision of ``m`` after canonical integer rescaling."""
    sub, embedding, _ = m._subdivision
    return sub, embedding


def lift_divisor(m: MetricMultigraph, d: Divisor) -> Divisor:
    sub, embedding = subdivided(m)
    if d.graph != m.graph:
        raise ValueError("divisor must live on the metric graph's vertices")
    return Divisor(sub, {embedding[v]: c for v, c in d.items()})


def certify_rank_determining(m: MetricMultigraph, a: Iterable[str]) -> bool:
    """Sufficient test that ``a`` is rank-determining.

    Holds when the closure of every component of the metric graph minus ``a``
    is a tree.  Checked on the subdivided graph.
    """
    a = set(a)
    if not a <= set(m.graph.vertices):
        raise ValueError("a must consist of original vertices")
    if not a:
        # nothing to probe with; even a tree needs one point
        return False
    sub, _ = subdivided(m)
    for e in sub.edges:
        if e.is_loop and e.u in a:
            return False
    seen: set[str] = set()
    for start in sub.vertices:
        if start in a or start in seen:
            continue
        comp = {start}
        stack = [start]
        edge_ids: set[str] = set()
        attach: set[str] = set()
        while stack:
            x = stack.pop()
            for e, y in sub.neighbors(x):
                edge_ids.add(e.id)
                if y in a:
                    attach.add(y)
                elif y not in comp:
                    comp.add(y)
                    stack.append(y)
            if sub.loop_count(x):
                return False
        seen |= comp
        if len(edge_ids) != len(comp) + len(attach) - 1:
            return False
    return True


def rank_metric(m: MetricMultigraph, d: Divisor, probe_set: Iterable[str] | None = None, *,
                probe_cap: int = DEFAULT_PROBE_CAP) -> RankResult:
    """Rank of a vertex-supported divisor on a metric graph.

    Lengths are rescaled to coprime integers and every edge is cut into unit
    edges; the discrete rank there is the metric rank.  A certified
    rank-determining ``probe_set`` restricts the probes to those vertices.
    """
    sub, _ = subdivided(m)
    lifted = lift_divisor(m, d)
    if probe_set is None:
        probes = tuple(sub.vertices)
    else:
        chosen = set(probe_set)
        if not certify_rank_determining(m, chosen):
            raise ValueError("probe set is not certified rank-determining")
        probes = tuple(v for v in m.graph.vertices if v in chosen)
    return _rank_search(sub, lifted, probes, probe_cap)
