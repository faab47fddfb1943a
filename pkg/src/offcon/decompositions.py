"""Static connectivity decompositions of undirected multigraphs.

Connected components, bridges / 2-edge-connected components, articulation
points / block trees, and 3-edge-connected components.  All routines are
multigraph-correct: a pair of parallel edges is never a bridge, and a
parallel bundle forms a block of its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multigraph import MultiGraph, VertexPartition


def connected_components(g: MultiGraph) -> VertexPartition:
    """Label every vertex with the smallest vertex of its component."""
    labels: dict[int, int] = {}
    for root in sorted(g.vertices()):
        if root in labels:
            continue
        stack = [root]
        labels[root] = root
        while stack:
            v = stack.pop()
            for w in g.adjacent_vertices(v):
                if w not in labels:
                    labels[w] = root
                    stack.append(w)
    return labels


def two_edge_components(g: MultiGraph) -> tuple[frozenset[int], VertexPartition]:
    """Bridges and 2-edge-connected components.

    Returns the set of bridge edge keys and a partition labelling each
    vertex with the smallest vertex of its 2-edge-connected component.
    A tree edge is a bridge only when no back edge (including a parallel
    copy of the edge itself) spans it.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[int] = set()
    counter = 0
    for root in g.vertices():
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        # frames: (vertex, edge key used to enter, iterator over neighbors)
        stack = [(root, None, g.neighbors(root))]
        while stack:
            v, in_key, it = stack[-1]
            advanced = False
            for k, w in it:
                if k == in_key:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, k, g.neighbors(w)))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    if low[v] > disc[parent]:
                        bridges.add(in_key)
                    if low[v] < low[parent]:
                        low[parent] = low[v]

    # Components of the graph with bridges removed.
    labels: dict[int, int] = {}
    for root in sorted(g.vertices()):
        if root in labels:
            continue
        labels[root] = root
        stack2 = [root]
        while stack2:
            v = stack2.pop()
            for k, w in g.neighbors(v):
                if k not in bridges and w not in labels:
                    labels[w] = root
                    stack2.append(w)
    return frozenset(bridges), labels


@dataclass(frozen=True)
class BlockTree:
    """Biconnected components of a connected graph and their cut vertices.

    ``blocks[i]`` is the vertex set of the i-th block and ``block_edges[i]``
    its edge keys; every edge lies in exactly one block.  ``incidence``
    links each block to the cut vertices it contains, which makes the
    block/cut-vertex structure a tree.
    """

    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    @property
    def incidence(self) -> tuple[frozenset[int], ...]:
        return tuple(b & self.cut_vertices for b in self.blocks)

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def _block_decomposition(
    g: MultiGraph,
) -> tuple[list[frozenset[int]], list[frozenset[int]], set[int]]:
    """Blocks and articulation points of a (possibly disconnected) graph."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    edge_stack: list[int] = []
    blocks_v: list[frozenset[int]] = []
    blocks_e: list[frozenset[int]] = []
    cuts: set[int] = set()

    def emit(from_index: int) -> None:
        keys = edge_stack[from_index:]
        del edge_stack[from_index:]
        verts: set[int] = set()
        for k in keys:
            a, b = g.endpoints(k)
            verts.add(a)
            verts.add(b)
        blocks_v.append(frozenset(verts))
        blocks_e.append(frozenset(keys))

    for root in sorted(g.vertices()):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        # frames: (vertex, entering edge key, neighbor iterator,
        #          edge-stack index of the entering edge)
        stack = [(root, None, g.neighbors(root), 0)]
        while stack:
            v, in_key, it, _ = stack[-1]
            advanced = False
            for k, w in it:
                if k == in_key:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append(k)
                    stack.append((w, k, g.neighbors(w), len(edge_stack) - 1))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(k)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if not advanced:
                _, _, _, mark = stack.pop()
                if stack:
                    parent = stack[-1][0]
                    if low[v] >= disc[parent]:
                        # parent separates v's subtree: close a block made
                        # of the edges stacked since parent->v was pushed
                        if parent == root:
                            root_children += 1
                        else:
                            cuts.add(parent)
                        emit(mark)
                    if low[v] < low[parent]:
                        low[parent] = low[v]
        if root_children > 1:
            cuts.add(root)

    return blocks_v, blocks_e, cuts


def block_tree(g: MultiGraph) -> BlockTree:
    """Block tree of a connected graph; raises on disconnected input."""
    if g.vertex_count:
        comp = connected_components(g)
        if len(set(comp.values())) > 1:
            raise ValueError("block_tree requires a connected graph")
    blocks_v, blocks_e, cuts = _block_decomposition(g)
    order = sorted(range(len(blocks_v)), key=lambda i: min(blocks_v[i]))
    return BlockTree(
        blocks=tuple(blocks_v[i] for i in order),
        block_edges=tuple(blocks_e[i] for i in order),
        cut_vertices=frozenset(cuts),
    )


def _partition_refine(part: dict[int, int], other: dict[int, int]) -> dict[int, int]:
    """Meet of two partitions, labels normalised to smallest members."""
    groups: dict[tuple[int, int], list[int]] = {}
    for v, lab in part.items():
        groups.setdefault((lab, other[v]), []).append(v)
    out: dict[int, int] = {}
    for members in groups.values():
        rep = min(members)
        for v in members:
            out[v] = rep
    return out


def three_edge_components(g: MultiGraph) -> VertexPartition:
    """3-edge-connected components.

    Two vertices share a label iff no edge set of size <= 2 separates
    them.  Computed by intersecting, over every edge e, the
    2-edge-connected partition of the graph with e removed: a 2-element
    cut {e, f} shows up as the bridge f once e is gone.
    """
    part = connected_components(g)
    if g.edge_count == 0:
        return part
    work = g.copy()
    for key in sorted(dict(g.edge_items())):
        u, v = work.endpoints(key)
        work.remove_edge(key)
        _, sub = two_edge_components(work)
        work.add_edge(u, v, key=key)
        part = _partition_refine(part, sub)
    return part
