"""Cactus view of a graph whose 3-edge-connected components are trivial.

A cactus is a connected multigraph in which every edge lies on at most
one cycle.  After contracting each 3-edge-connected component to a point,
every block of the remaining graph is a single cycle (a parallel pair
counts as a cycle of length two) or a lone bridge edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompositions import _block_decomposition, connected_components
from .multigraph import MultiGraph


class CactusError(ValueError):
    """The input still contains a non-trivial 3-edge-connected component."""


@dataclass(frozen=True)
class Cactus:
    """Edge partition of a cactus into cycles and tree (bridge) edges."""

    graph: MultiGraph
    cycles: tuple[frozenset[int], ...]
    tree_edges: frozenset[int]

    def cycle_of(self, key: int) -> int | None:
        for i, cyc in enumerate(self.cycles):
            if key in cyc:
                return i
        return None


def cactus_of(g: MultiGraph) -> Cactus:
    """Partition the edges of ``g`` into cycles and bridges.

    Requires ``g`` connected with every 3-edge-connected component a
    single vertex; raises :class:`CactusError` otherwise (a caller bug:
    contraction must happen first).
    """
    if g.vertex_count:
        comp = connected_components(g)
        if len(set(comp.values())) > 1:
            raise ValueError("cactus_of requires a connected graph")
    blocks_v, blocks_e, _ = _block_decomposition(g)
    cycles: list[frozenset[int]] = []
    tree: set[int] = set()
    for verts, keys in zip(blocks_v, blocks_e):
        if len(keys) == 1:
            tree.update(keys)
            continue
        # A block that is a cycle has exactly as many edges as vertices,
        # every vertex meeting exactly two of the block's edges.
        if len(keys) != len(verts):
            raise CactusError(
                f"block on {len(verts)} vertices has {len(keys)} edges; "
                "a non-trivial 3-edge-connected component survives"
            )
        within: dict[int, int] = {}
        for k in keys:
            a, b = g.endpoints(k)
            within[a] = within.get(a, 0) + 1
            within[b] = within.get(b, 0) + 1
        if any(d != 2 for d in within.values()):
            raise CactusError("block is not a simple cycle")
        cycles.append(frozenset(keys))
    return Cactus(graph=g, cycles=tuple(cycles), tree_edges=frozenset(tree))
