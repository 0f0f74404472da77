"""Brill-Noether numerology and the Heawood specialness certificate."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import heawood
from .divisors import (
    DEFAULT_PROBE_CAP,
    Divisor,
    RankResult,
    certify_rank_determining,
    effective_in_class,
    is_reduced,
    lift_divisor,
    rank_metric,
    subdivided,
)
from .errors import FalsificationError
from .graph import (
    DEFAULT_CYCLE_CAP,
    INFINITE,
    MetricMultigraph,
    MultiGraph,
    bipartition,
    genus,
    girth,
    min_cycle_hits,
)


def rho(g: int, r: int, d: int) -> int:
    """Brill-Noether number g - (r + 1)(g - d + r)."""
    if g < 0 or r < 0:
        raise ValueError("genus and rank must be nonnegative")
    return g - (r + 1) * (g - d + r)


def color_class_divisor(g: MultiGraph, b) -> Divisor:
    """Sum of the vertices in ``b``, one chip each."""
    return Divisor(g, {v: 1 for v in b})


def ordered(g: MultiGraph, vertices) -> list[str]:
    vertices = set(vertices)
    return [v for v in g.vertices if v in vertices]


@dataclass
class LowerBound:
    r: int
    min_hits: int
    rank_determining: bool | None
    verified_rank: int | None = None


def prop21_lower_bound(m: MetricMultigraph, b, *, verify: bool = False,
                       cycle_cap: int = DEFAULT_CYCLE_CAP) -> LowerBound:
    """If every cycle meets ``b`` at least r + 1 times, D_B has rank at least r.

    The hypothesis is computed by cycle enumeration.  For r >= 1 the set ``b``
    must also pass the acyclic-closure test; ``verify`` additionally computes
    the metric rank and checks the conclusion.
    """
    g = m.graph
    hits = min_cycle_hits(g, b, cycle_cap)
    if hits == INFINITE:
        raise ValueError("graph is a tree; there is no cycle condition to check")
    r = hits - 1
    certified = None
    if r >= 1:
        certified = certify_rank_determining(m, b)
        if not certified:
            raise FalsificationError(
                "every cycle meets b twice but b failed the rank-determining test",
                {"b": ordered(g, b)},
            )
    bound = LowerBound(r, hits, certified)
    if verify:
        d = color_class_divisor(g, b)
        result = rank_metric(m, d, probe_set=b if certified else None)
        bound.verified_rank = result.rank
        if result.rank < r:
            raise FalsificationError(
                "rank of D_B is below the cycle-hit bound",
                {"b": ordered(g, b), "bound": r, "rank": result.rank},
            )
    return bound


def cor22_bound(g: MultiGraph) -> int:
    """girth/2 - 1 for a bipartite graph with a cycle."""
    if bipartition(g) is None:
        raise ValueError("graph is not bipartite")
    gi = girth(g)
    if gi == INFINITE:
        raise ValueError("graph is acyclic")
    return gi // 2 - 1


@dataclass(frozen=True)
class FeasiblePair:
    girth: int
    genus: int
    moore_lower_bound: int


def girth_genus_scan(max_girth: int) -> list[FeasiblePair]:
    """Even girths and genera a trivalent graph could have with girth^2/4 > genus.

    A trivalent graph of girth t has at least 2(2^(t/2) - 1) vertices, so its
    genus is at least 2^(t/2).
    """
    if max_girth < 2 or max_girth % 2:
        raise ValueError("max_girth must be an even integer >= 2")
    out = []
    for t in range(2, max_girth + 1, 2):
        low = 2 ** (t // 2)
        for g in range(low, t * t // 4):
            out.append(FeasiblePair(t, g, low))
    return out


def random_metric(g: MultiGraph, rng: random.Random, numerator_bound: int = 10,
                  denominator_bound: int = 6) -> MetricMultigraph:
    """Lengths p/q with p, q drawn uniformly from [1, bounds], in edge order."""
    lengths = {}
    for e in g.edges:
        p = rng.randint(1, numerator_bound)
        q = rng.randint(1, denominator_bound)
        lengths[e.id] = Fraction(p, q)
    return MetricMultigraph(g, lengths)


@dataclass
class PairWitness:
    v1: str
    v2: str
    reduced: bool
    coefficient_at_v1: int
    minus_v1_reduced_value: int
    minus_v1_effective: bool

    @property
    def ok(self) -> bool:
        return (
            self.reduced
            and self.coefficient_at_v1 == 0
            and self.minus_v1_reduced_value < 0
            and not self.minus_v1_effective
        )


@dataclass
class SpecialnessCertificate:
    metric: MetricMultigraph
    divisor: Divisor
    degree: int
    rank_result: RankResult
    rho_value: int
    genus: int
    girth: int
    reduced_witnesses: list[PairWitness]
    lower_bound: LowerBound | None = None
    provenance: dict = field(default_factory=dict)

    def check(self) -> None:
        """Re-run every embedded check; raise FalsificationError on any failure."""
        problems = []
        if self.rho_value != rho(self.genus, self.rank_result.rank, self.degree):
            problems.append("rho does not match genus, rank and degree")
        if not self.rank_result.verify():
            problems.append("rank witnesses do not re-verify")
        sub, _ = subdivided(self.metric)
        d = lift_divisor(self.metric, self.divisor)
        for w in self.reduced_witnesses:
            fresh = _pair_witness(sub, d, w.v1, w.v2)
            if fresh != w or not w.ok:
                problems.append(f"pair witness ({w.v1}, {w.v2}) fails")
        if self.lower_bound is not None and self.rank_result.rank < self.lower_bound.r:
            problems.append("rank is below the cycle-hit lower bound")
        if (self.degree, self.rank_result.rank, self.rho_value, self.genus, self.girth) != (7, 2, -1, 8, 6):
            problems.append("certificate values differ from degree 7, rank 2, rho -1, genus 8, girth 6")
        if problems:
            raise FalsificationError("; ".join(problems), self.to_json())

    def to_json(self) -> dict:
        from .graphio import graph_to_json

        return {
            "graph": graph_to_json(self.metric.graph, self.metric),
            "provenance": self.provenance,
            "divisor": self.divisor.as_dict(),
            "degree": self.degree,
            "rank": self.rank_result.rank,
            "rho": self.rho_value,
            "genus": self.genus,
            "girth": self.girth,
            "special": self.rho_value < 0,
            "cycle_hit_bound": None if self.lower_bound is None else {
                "min_cycle_hits": self.lower_bound.min_hits,
                "rank_at_least": self.lower_bound.r,
                "rank_determining": self.lower_bound.rank_determining,
            },
            "rank_result": self.rank_result.to_json(),
            "reduced_witnesses": [
                {
                    "v1": w.v1,
                    "v2": w.v2,
                    "v1_reduced": w.reduced,
                    "coefficient_at_v1": w.coefficient_at_v1,
                    "minus_v1_coefficient_at_v1": w.minus_v1_reduced_value,
                    "minus_v1_effective_equivalent": w.minus_v1_effective,
                }
                for w in self.reduced_witnesses
            ],
        }


def _pair_witness(sub: MultiGraph, d_b: Divisor, v1: str, v2: str) -> PairWitness:
    d = d_b - Divisor(sub, {v1: 1}) - Divisor(sub, {v2: 1})
    worse = d - Divisor(sub, {v1: 1})
    # D_B - v1 - v2 being v1-reduced with nothing at v1 makes D_B - 2v1 - v2
    # v1-reduced with -1 at v1, hence not equivalent to an effective divisor
    minus = worse[v1] if is_reduced(sub, worse, v1) else 0
    effective = effective_in_class(sub, worse) is not None
    return PairWitness(v1, v2, is_reduced(sub, d, v1), d[v1], minus, effective)


def certify_special(m: MetricMultigraph, provenance: dict | None = None, *,
                    cycle_cap: int = DEFAULT_CYCLE_CAP, probe_cap: int = DEFAULT_PROBE_CAP) -> SpecialnessCertificate:
    """Certify that D_B has degree 7 and rank 2 on a metric Heawood graph."""
    g = m.graph
    reference = heawood()
    if [(e.u, e.v) for e in g.edges] != [(e.u, e.v) for e in reference.edges] or g.vertices != reference.vertices:
        raise ValueError("metric graph is not the catalog Heawood graph")
    bip = bipartition(g)
    b = ordered(g, bip.black)
    d_b = color_class_divisor(g, b)
    bound = prop21_lower_bound(m, b, cycle_cap=cycle_cap)
    result = rank_metric(m, d_b, probe_set=b, probe_cap=probe_cap)
    sub, _ = subdivided(m)
    lifted = lift_divisor(m, d_b)
    witnesses = [_pair_witness(sub, lifted, v1, v2) for v1, v2 in itertools.combinations(b, 2)]
    cert = SpecialnessCertificate(
        metric=m,
        divisor=d_b,
        degree=d_b.degree,
        rank_result=result,
        rho_value=rho(genus(g), result.rank, d_b.degree),
        genus=genus(g),
        girth=girth(g),
        reduced_witnesses=witnesses,
        lower_bound=bound,
        provenance=dict(provenance or {}),
    )
    cert.check()
    return cert
