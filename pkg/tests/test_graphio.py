import json
from fractions import Fraction

import pytest

from bnspecial.catalog import figure1, heawood
from bnspecial.graph import MetricMultigraph
from bnspecial.graphio import (
    GraphFormatError,
    divisor_from_json,
    graph_from_json,
    graph_to_json,
    read_divisor,
    read_graph,
    to_dot,
    write_graph,
)


def test_round_trip_with_lengths(tmp_path):
    h = heawood()
    m = MetricMultigraph(h, {e.id: Fraction(i, 3) for i, e in enumerate(h.edges, start=1)})
    path = tmp_path / "h.json"
    write_graph(path, h, m)
    back = read_graph(path)
    assert back == m
    assert json.loads(path.read_text())["edges"][0] == {"id": "p1l1", "ends": ["p1", "l1"], "length": "1/3"}


def test_missing_length_defaults_to_one():
    m = graph_from_json({"vertices": ["a", "b"], "edges": [{"id": "e", "ends": ["a", "b"]}]})
    assert m.length("e") == 1


@pytest.mark.parametrize(
    "edges, fragment",
    [
        ([{"id": "e", "ends": ["a", "b"], "length": "0.5"}], "edges[0].length"),
        ([{"id": "e", "ends": ["a", "b"], "length": "-1"}], "positive"),
        ([{"id": "e", "ends": ["a", "b"], "length": "0"}], "positive"),
        ([{"id": "e", "ends": ["a", "b"], "length": 2}], "string"),
        ([{"id": "e", "ends": ["a", "z"]}], "edges[0].ends"),
        ([{"id": "e", "ends": ["a"]}], "edges[0].ends"),
        ([{"ends": ["a", "b"]}], "edges[0].id"),
        ([{"id": "e", "ends": ["a", "b"]}, {"id": "e", "ends": ["a", "b"]}], "edges[1].id"),
        ([], "not connected"),
    ],
)
def test_malformed_graphs_name_the_field(edges, fragment):
    with pytest.raises(GraphFormatError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        graph_from_json({"vertices": ["a", "b"], "edges": edges})


def test_bad_top_level_and_vertices():
    with pytest.raises(GraphFormatError):
        graph_from_json([])
    with pytest.raises(GraphFormatError, match="unique"):
        graph_from_json({"vertices": ["a", "a"], "edges": []})
    with pytest.raises(GraphFormatError, match="at least one"):
        graph_from_json({"vertices": [], "edges": []})


def test_unreadable_and_invalid_files(tmp_path):
    with pytest.raises(GraphFormatError):
        read_graph(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(GraphFormatError, match="line 1"):
        read_graph(bad)


def test_divisor_json(tmp_path):
    g = figure1()
    assert divisor_from_json(g, {"o": 2}).as_dict() == {"o": 2}
    with pytest.raises(GraphFormatError, match="unknown vertex"):
        divisor_from_json(g, {"zz": 1})
    with pytest.raises(GraphFormatError, match="integer"):
        divisor_from_json(g, {"o": 1.5})
    with pytest.raises(GraphFormatError):
        divisor_from_json(g, [1, 2])
    path = tmp_path / "d.json"
    path.write_text('{"x1": 1, "x2": -1}')
    assert read_divisor(path, g).as_dict() == {"x1": 1, "x2": -1}


def test_graph_to_json_without_metric_is_unit():
    js = graph_to_json(figure1())
    assert {e["length"] for e in js["edges"]} == {"1"}


def test_dot_is_deterministic_and_labelled():
    m = MetricMultigraph(figure1(), {"t1": Fraction(3, 2)})
    dot = to_dot(m)
    assert dot == to_dot(m)
    assert dot.startswith("graph G {\n")
    assert '"o" -- "x1" [label="3/2"];' in dot
    assert '"x1" -- "x1" [label="1"];' in dot
