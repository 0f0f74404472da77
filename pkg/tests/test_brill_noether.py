import json
import random
from fractions import Fraction

import pytest

from bnspecial.brill_noether import (
    FeasiblePair,
    certify_special,
    color_class_divisor,
    cor22_bound,
    girth_genus_scan,
    prop21_lower_bound,
    random_metric,
    rho,
)
from bnspecial.catalog import complete_graph, cycle_graph, heawood, path_graph
from bnspecial.divisors import Divisor, is_reduced, lift_divisor, subdivided
from bnspecial.errors import FalsificationError
from bnspecial.graph import MetricMultigraph

POINTS = [f"p{i}" for i in range(1, 8)]


@pytest.mark.parametrize("args, expected", [((8, 2, 7), -1), ((0, 0, 0), 0), ((4, 1, 3), 0), ((3, 0, 0), 0)])
def test_rho(args, expected):
    assert rho(*args) == expected


@pytest.mark.parametrize("args", [(-1, 0, 0), (3, -1, 2)])
def test_rho_rejects_negative_genus_or_rank(args):
    with pytest.raises(ValueError):
        rho(*args)


def test_color_class_divisor():
    d = color_class_divisor(heawood(), POINTS)
    assert d.degree == 7
    assert set(d.support()) == set(POINTS)


def test_cycle_hit_bound_on_hexagon():
    g = cycle_graph(6)
    bound = prop21_lower_bound(MetricMultigraph.unit(g), ["v0", "v2", "v4"], verify=True)
    assert (bound.r, bound.min_hits, bound.rank_determining, bound.verified_rank) == (2, 3, True, 2)


def test_cycle_hit_bound_on_heawood_color_class():
    bound = prop21_lower_bound(MetricMultigraph.unit(heawood()), POINTS)
    assert bound.r == 2 and bound.rank_determining


def test_cycle_hit_bound_rank_zero_needs_no_certificate():
    bound = prop21_lower_bound(MetricMultigraph.unit(cycle_graph(4)), ["v0"], verify=True)
    assert bound.r == 0 and bound.rank_determining is None and bound.verified_rank == 0


def test_cycle_hit_bound_rejects_trees():
    with pytest.raises(ValueError):
        prop21_lower_bound(MetricMultigraph.unit(path_graph(3)), ["v0"])


def test_bipartite_girth_bound():
    assert cor22_bound(heawood()) == 2
    assert cor22_bound(cycle_graph(4)) == 1
    with pytest.raises(ValueError):
        cor22_bound(complete_graph(3))
    with pytest.raises(ValueError):
        cor22_bound(path_graph(4))


def test_girth_scan():
    assert girth_genus_scan(30) == [FeasiblePair(6, 8, 8)]
    assert girth_genus_scan(4) == []
    assert girth_genus_scan(2) == []
    for bad in (1, 5, 0):
        with pytest.raises(ValueError):
            girth_genus_scan(bad)


def test_random_metric_is_seeded_and_bounded():
    g = heawood()
    a = random_metric(g, random.Random(42))
    b = random_metric(g, random.Random(42))
    assert a == b
    for x in a.lengths.values():
        assert isinstance(x, Fraction)
        assert Fraction(1, 6) <= x <= 10


@pytest.fixture(scope="module")
def unit_certificate():
    return certify_special(MetricMultigraph.unit(heawood()), {"lengths": "unit"})


def test_unit_certificate_values(unit_certificate):
    cert = unit_certificate
    assert (cert.degree, cert.rank_result.rank, cert.rho_value, cert.genus, cert.girth) == (7, 2, -1, 8, 6)
    assert len(cert.reduced_witnesses) == 21
    assert all(w.ok for w in cert.reduced_witnesses)
    assert cert.lower_bound.r == 2


def test_unit_certificate_pair_witness_is_reduced(unit_certificate):
    m = unit_certificate.metric
    sub, _ = subdivided(m)
    d = lift_divisor(m, color_class_divisor(heawood(), POINTS)) - Divisor(sub, {"p1": 1, "p2": 1})
    assert is_reduced(sub, d, "p1")
    assert d["p1"] == 0


def test_certificate_json_round_trips(unit_certificate):
    js = unit_certificate.to_json()
    assert json.loads(json.dumps(js)) == js
    assert js["special"] is True
    assert js["rank"] == 2 and js["rho"] == -1
    assert len(js["graph"]["edges"]) == 21
    assert js["rank_result"]["upper_witness"]["probe"] == {"p1": 2, "p2": 1}


def test_tampered_certificate_fails_check():
    cert = certify_special(MetricMultigraph.unit(heawood()))
    cert.rho_value = 0
    with pytest.raises(FalsificationError):
        cert.check()


def test_certificate_on_scaled_and_random_metrics():
    h = heawood()
    assert certify_special(MetricMultigraph(h, {e.id: 3 for e in h.edges})).rank_result.rank == 2
    cert = certify_special(random_metric(h, random.Random(7), 5, 3))
    assert cert.rank_result.rank == 2


def test_certify_rejects_other_graphs():
    with pytest.raises(ValueError):
        certify_special(MetricMultigraph.unit(cycle_graph(14)))
