"""Brute-force rank via the integer Laplacian lattice.

Nothing here touches Dhar's algorithm: linear equivalence is lattice
membership of ``d1 - d2`` in the image of the Laplacian, decided with an
integer Hermite normal form, and rank is computed straight from the
definition by enumerating effective divisors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .divisors import Divisor
from .errors import ResourceLimitError
from .graph import MultiGraph

MAX_VERTICES = 8
MAX_DEGREE = 8


def laplacian(g: MultiGraph) -> list[list[int]]:
    n = len(g.vertices)
    idx = g.index
    L = [[0] * n for _ in range(n)]
    for e in g.edges:
        if e.is_loop:
            continue
        i, j = idx[e.u], idx[e.v]
        L[i][i] += 1
        L[j][j] += 1
        L[i][j] -= 1
        L[j][i] -= 1
    return L


def hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive, strictly move right, and entries above a pivot lie in
    ``[0, pivot)``.  Zero rows are dropped.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: list[list[int]] = []
    for col in range(ncols):
        live = [r for r in A if r[col] != 0]
        if not live:
            continue
        rest = [r for r in A if r[col] == 0]
        # Euclid on the column until a single row keeps a nonzero entry
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for k, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[k] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        A = rest
    return out


@dataclass(frozen=True)
class LaplacianLattice:
    graph: MultiGraph

    @cached_property
    def matrix(self) -> list[list[int]]:
        return laplacian(self.graph)

    @cached_property
    def basis(self) -> list[list[int]]:
        return hermite_normal_form(self.matrix)

    @cached_property
    def _pivots(self) -> list[int]:
        return [next(i for i, a in enumerate(r) if a) for r in self.basis]

    def residue(self, x: list[int]) -> tuple[int, ...]:
        """Canonical representative of ``x`` modulo the lattice."""
        x = list(x)
        for row, p in zip(self.basis, self._pivots):
            q = x[p] // row[p]
            if q:
                x = [a - q * b for a, b in zip(x, row)]
        return tuple(x)

    def contains(self, x: list[int]) -> bool:
        return not any(self.residue(x))

    def vector(self, d: Divisor) -> list[int]:
        return [d[v] for v in self.graph.vertices]


def _lattice(g: MultiGraph) -> LaplacianLattice:
    cache = g.__dict__.setdefault("_lattice_cache", [])
    if not cache:
        cache.append(LaplacianLattice(g))
    return cache[0]


def equivalent_via_lattice(g: MultiGraph, d1: Divisor, d2: Divisor) -> bool:
    if d1.degree != d2.degree:
        return False
    lat = _lattice(g)
    return lat.contains([a - b for a, b in zip(lat.vector(d1), lat.vector(d2))])


def _effective(n: int, k: int):
    for combo in itertools.combinations_with_replacement(range(n), k):
        x = [0] * n
        for i in combo:
            x[i] += 1
        yield x


def rank_bruteforce(g: MultiGraph, d: Divisor) -> int:
    """Rank straight from the definition, for graphs with at most 8 vertices."""
    n = len(g.vertices)
    if n > MAX_VERTICES or d.degree > MAX_DEGREE:
        raise ResourceLimitError(
            f"oracle limited to {MAX_VERTICES} vertices and degree {MAX_DEGREE} "
            f"(got {n} vertices, degree {d.degree})"
        )
    if d.degree < 0:
        return -1
    lat = _lattice(g)
    dv = lat.vector(d)
    classes: dict[int, set[tuple[int, ...]]] = {}

    def reachable(k: int) -> set[tuple[int, ...]]:
        if k not in classes:
            classes[k] = {lat.residue(f) for f in _effective(n, k)}
        return classes[k]

    rank = -1
    for r in range(d.degree + 1):
        targets = reachable(d.degree - r)
        for e in _effective(n, r):
            if lat.residue([a - b for a, b in zip(dv, e)]) not in targets:
                return rank
        rank = r
    return rank
