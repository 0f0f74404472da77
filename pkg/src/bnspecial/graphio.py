"""JSON graph and divisor files, and DOT export."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .divisors import Divisor
from .graph import Edge, MetricMultigraph, MultiGraph


class GraphFormatError(ValueError):
    """Malformed graph or divisor file; the message names the offending field."""


def _length(text, where: str) -> Fraction:
    if not isinstance(text, str):
        raise GraphFormatError(f"{where}: length must be a string like \"3\" or \"3/2\"")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise GraphFormatError(f"{where}: cannot parse length {text!r}") from None
    if "." in text or "e" in text.lower():
        raise GraphFormatError(f"{where}: decimal lengths are not accepted, use p/q")
    if value <= 0:
        raise GraphFormatError(f"{where}: length must be positive, got {text!r}")
    return value


def graph_from_json(data) -> MetricMultigraph:
    """Build a metric graph from the parsed JSON object; missing lengths are 1."""
    if not isinstance(data, dict):
        raise GraphFormatError("top level must be an object with 'vertices' and 'edges'")
    vertices = data.get("vertices")
    edges = data.get("edges")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError("vertices: must be an array of strings")
    if len(set(vertices)) != len(vertices):
        raise GraphFormatError("vertices: names must be unique")
    if not isinstance(edges, list):
        raise GraphFormatError("edges: must be an array")
    known = set(vertices)
    seen: set[str] = set()
    parsed: list[Edge] = []
    lengths: dict[str, Fraction] = {}
    for i, item in enumerate(edges):
        where = f"edges[{i}]"
        if not isinstance(item, dict):
            raise GraphFormatError(f"{where}: must be an object")
        eid = item.get("id")
        if not isinstance(eid, str):
            raise GraphFormatError(f"{where}.id: must be a string")
        if eid in seen:
            raise GraphFormatError(f"{where}.id: duplicate edge id {eid!r}")
        seen.add(eid)
        ends = item.get("ends")
        if not (isinstance(ends, list) and len(ends) == 2 and all(isinstance(x, str) for x in ends)):
            raise GraphFormatError(f"{where}.ends: must be a pair of vertex names")
        for x in ends:
            if x not in known:
                raise GraphFormatError(f"{where}.ends: unknown endpoint {x!r}")
        parsed.append(Edge(eid, ends[0], ends[1]))
        lengths[eid] = _length(item.get("length", "1"), f"{where}.length")
    if not vertices:
        raise GraphFormatError("vertices: at least one vertex is required")
    try:
        g = MultiGraph(vertices, parsed)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    return MetricMultigraph(g, lengths)


def graph_to_json(g: MultiGraph, metric: MetricMultigraph | None = None) -> dict:
    edges = []
    for e in g.edges:
        item = {"id": e.id, "ends": [e.u, e.v]}
        item["length"] = str(metric.length(e.id)) if metric is not None else "1"
        edges.append(item)
    return {"vertices": list(g.vertices), "edges": edges}


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _load(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def read_graph(path) -> MetricMultigraph:
    try:
        return graph_from_json(_load(path))
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def write_graph(path, g: MultiGraph, metric: MetricMultigraph | None = None) -> None:
    Path(path).write_text(dumps(graph_to_json(g, metric)), encoding="utf-8")


def divisor_from_json(g: MultiGraph, data) -> Divisor:
    if not isinstance(data, dict):
        raise GraphFormatError("divisor must be an object mapping vertex names to integers")
    for v, c in data.items():
        if v not in g.index:
            raise GraphFormatError(f"divisor[{v!r}]: unknown vertex")
        if not isinstance(c, int) or isinstance(c, bool):
            raise GraphFormatError(f"divisor[{v!r}]: coefficient must be an integer")
    return Divisor(g, data)


def read_divisor(path, g: MultiGraph) -> Divisor:
    try:
        return divisor_from_json(g, _load(path))
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def to_dot(m: MetricMultigraph) -> str:
    g = m.graph
    lines = ["graph G {"]
    lines += [f"  {json.dumps(v)};" for v in g.vertices]
    for e in g.edges:
        lines.append(f"  {json.dumps(e.u)} -- {json.dumps(e.v)} [label={json.dumps(str(m.length(e.id)))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
