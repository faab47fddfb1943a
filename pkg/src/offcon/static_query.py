"""Pair-connectivity predicates on a static multigraph.

Four query modes: 2-edge-connected, 3-edge-connected, biconnected and
triconnected.  A pair u, v qualifies when it is connected and no cut of
the mode's kind with size below the level separates it, where vertex
cuts must be disjoint from {u, v}.  Under that convention adjacent
vertices are always bi- and tri-connected.

``pair_query`` answers through the standard decompositions and is usable
at any scale; ``pair_query_enumerated`` answers straight from the cut
definition by trying every candidate cut set, and serves as the
independent reference in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .decompositions import (
    _block_decomposition,
    three_edge_components,
    two_edge_components,
)
from .multigraph import MultiGraph


@dataclass(frozen=True)
class QueryMode:
    flavor: str  # "edge" or "vertex"
    level: int  # 2 or 3

    def __post_init__(self) -> None:
        if self.flavor not in ("edge", "vertex") or self.level not in (2, 3):
            raise ValueError(f"invalid query mode {self.flavor}/{self.level}")

    @property
    def code(self) -> str:
        return {
            ("edge", 2): "2E",
            ("edge", 3): "3E",
            ("vertex", 2): "BC",
            ("vertex", 3): "TC",
        }[(self.flavor, self.level)]


MODE_2E = QueryMode("edge", 2)
MODE_3E = QueryMode("edge", 3)
MODE_BC = QueryMode("vertex", 2)
MODE_TC = QueryMode("vertex", 3)
ALL_MODES = (MODE_2E, MODE_3E, MODE_BC, MODE_TC)
MODES_BY_CODE = {m.code: m for m in ALL_MODES}


@dataclass(frozen=True)
class PairQuery:
    mode: QueryMode
    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError("query endpoints must differ")


def _require_vertices(g: MultiGraph, u: int, v: int) -> None:
    if not g.has_vertex(u):
        raise ValueError(f"unknown vertex {u}")
    if not g.has_vertex(v):
        raise ValueError(f"unknown vertex {v}")


def is_connected_pair(g: MultiGraph, u: int, v: int) -> bool:
    """True iff a path connects u and v."""
    _require_vertices(g, u, v)
    if u == v:
        return True
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for w in g.adjacent_vertices(x):
            if w == v:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _common_block(g: MultiGraph, u: int, v: int) -> frozenset[int] | None:
    blocks_v, _, _ = _block_decomposition(g)
    for verts in blocks_v:
        if u in verts and v in verts:
            return verts
    return None


def _reachable_avoiding(
    g: MultiGraph, u: int, v: int, banned: frozenset[int], within: frozenset[int] | None = None
) -> bool:
    if u in banned or v in banned:
        raise ValueError("query endpoints cannot be removed")
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for w in g.adjacent_vertices(x):
            if w in banned or w in seen:
                continue
            if within is not None and w not in within:
                continue
            if w == v:
                return True
            seen.add(w)
            stack.append(w)
    return False


def pair_query(g: MultiGraph, query: PairQuery) -> bool:
    """Mode-dispatched pair connectivity on the full graph."""
    u, v, mode = query.u, query.v, query.mode
    _require_vertices(g, u, v)
    if not is_connected_pair(g, u, v):
        return False
    if mode.flavor == "edge":
        if mode.level == 2:
            _, part = two_edge_components(g)
            return part[u] == part[v]
        part3 = three_edge_components(g)
        return part3[u] == part3[v]
    block = _common_block(g, u, v)
    if block is None:
        return False
    if mode.level == 2:
        return True
    if g.multiplicity(u, v) > 0:
        return True
    others = sorted(block - {u, v})
    for w, z in combinations(others, 2):
        if not _reachable_avoiding(g, u, v, frozenset((w, z)), within=block):
            return False
    return True


def pair_query_enumerated(g: MultiGraph, query: PairQuery) -> bool:
    """Answer straight from the cut definition, by exhaustive removal.

    Tries every candidate cut set of the mode's kind with size below the
    level (single edges/vertices, then pairs) and tests reachability.
    Intended for small graphs; it is the reference the fast paths are
    checked against.
    """
    u, v, mode = query.u, query.v, query.mode
    _require_vertices(g, u, v)
    if not is_connected_pair(g, u, v):
        return False
    if mode.flavor == "edge":
        keys = sorted(dict(g.edge_items()))
        cut_sets: list[tuple[int, ...]] = [(k,) for k in keys]
        if mode.level == 3:
            cut_sets.extend(combinations(keys, 2))
        work = g.copy()
        for cut in cut_sets:
            eps = [work.endpoints(k) for k in cut]
            for k in cut:
                work.remove_edge(k)
            separated = not is_connected_pair(work, u, v)
            for k, (a, b) in zip(cut, eps):
                work.add_edge(a, b, key=k)
            if separated:
                return False
        return True
    others = sorted(set(g.vertices()) - {u, v})
    cut_sets_v: list[tuple[int, ...]] = [(w,) for w in others]
    if mode.level == 3:
        cut_sets_v.extend(combinations(others, 2))
    for cut in cut_sets_v:
        if not _reachable_avoiding(g, u, v, frozenset(cut)):
            return False
    return True
