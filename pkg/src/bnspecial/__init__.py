"""Divisor theory on metric multigraphs: chip-firing, reduced divisors,
Baker-Norine rank, and a Brill-Noether specialness certificate for every
rational metric on the Heawood graph."""

from .brill_noether import (
    FeasiblePair,
    SpecialnessCertificate,
    certify_special,
    color_class_divisor,
    cor22_bound,
    girth_genus_scan,
    prop21_lower_bound,
    random_metric,
    rho,
)
from .catalog import fano_plane, figure1, heawood, levi_graph, loops_on_tree, midpoint_subdivision
from .divisors import (
    Divisor,
    RankResult,
    canonical_divisor,
    certify_rank_determining,
    dhar_unburnt,
    effective_in_class,
    fire_set,
    is_equivalent,
    is_reduced,
    rank_discrete,
    rank_metric,
    reduce,
)
from .errors import FalsificationError, ResourceLimitError
from .graph import (
    INFINITE,
    Bipartition,
    Cycle,
    Edge,
    MetricMultigraph,
    MultiGraph,
    bipartition,
    edge_connectivity,
    enumerate_cycles,
    genus,
    girth,
    min_cycle_hits,
    rescale_to_integer_lengths,
    subdivide_uniform,
)
from .oracle import equivalent_via_lattice, rank_bruteforce

__version__ = "0.1.0"
