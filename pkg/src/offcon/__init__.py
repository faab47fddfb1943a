"""Offline dynamic higher connectivity.

Given a fully known timeline of edge insertions, deletions and pair
queries, answers 2-edge-, 3-edge-, bi- and tri-connectivity queries by
recursive interval halving: edges alive across a whole subinterval are
folded into a small cut-equivalent graph before recursing, so total work
stays near-linear in the timeline length for the 2-edge and
biconnectivity modes.
"""

from .cactus import Cactus, CactusError, cactus_of
from .decompositions import (
    BlockTree,
    block_tree,
    connected_components,
    three_edge_components,
    two_edge_components,
)
from .multigraph import MultiGraph, VertexPartition, contract
from .oracle import CutCatalog, check_equivalence, cut_catalog, naive_answer
from .reducers import (
    DEFAULT_CONFIG,
    ReduceConfig,
    ReducedGraph,
    ReductionSizeError,
    reduce,
    reduce_2edge,
    reduce_3edge,
    reduce_bicon,
    reduce_tricon,
)
from .spqr import SpqrNode, SpqrTree, is_biconnected, separation_pairs, spqr_tree
from .static_query import (
    ALL_MODES,
    MODE_2E,
    MODE_3E,
    MODE_BC,
    MODE_TC,
    MODES_BY_CODE,
    PairQuery,
    QueryMode,
    is_connected_pair,
    pair_query,
    pair_query_enumerated,
)
from .timeline import (
    AnswerSheet,
    EdgeInstance,
    EngineConfig,
    Event,
    EventError,
    IntervalContext,
    RunStats,
    active_vertices,
    answer_queries,
    classify_edges,
    match_lifetimes,
    run,
)

__all__ = [
    "AnswerSheet",
    "ALL_MODES",
    "BlockTree",
    "Cactus",
    "CactusError",
    "CutCatalog",
    "DEFAULT_CONFIG",
    "EdgeInstance",
    "EngineConfig",
    "Event",
    "EventError",
    "IntervalContext",
    "MODE_2E",
    "MODE_3E",
    "MODE_BC",
    "MODE_TC",
    "MODES_BY_CODE",
    "MultiGraph",
    "PairQuery",
    "QueryMode",
    "ReduceConfig",
    "ReducedGraph",
    "ReductionSizeError",
    "RunStats",
    "SpqrNode",
    "SpqrTree",
    "VertexPartition",
    "active_vertices",
    "answer_queries",
    "block_tree",
    "cactus_of",
    "check_equivalence",
    "connected_components",
    "contract",
    "cut_catalog",
    "is_biconnected",
    "is_connected_pair",
    "match_lifetimes",
    "classify_edges",
    "naive_answer",
    "pair_query",
    "pair_query_enumerated",
    "reduce",
    "reduce_2edge",
    "reduce_3edge",
    "reduce_bicon",
    "reduce_tricon",
    "run",
    "separation_pairs",
    "spqr_tree",
    "three_edge_components",
    "two_edge_components",
]
