"""Undirected multigraph with stable integer edge keys.

Parallel edges are first-class citizens: every edge carries its own key,
and adjacency queries yield one entry per parallel copy.  Self-loops are
rejected on insertion, since a self-loop can never participate in a
separating cut.

Graphs are built by mutation and then treated as immutable values by the
decomposition and reduction routines; under that convention they are safe
to share across threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator

# A partition assigns every vertex a component label (the smallest vertex
# of its class, by convention of the routines in this package).
VertexPartition = dict[int, int]


class MultiGraph:
    """Undirected multigraph on integer vertices, no self-loops."""

    __slots__ = ("_adj", "_edges", "_next_key")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
    ) -> None:
        self._adj: dict[int, dict[int, list[int]]] = {}
        self._edges: dict[int, tuple[int, int]] = {}
        self._next_key = 0
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction -------------------------------------------------

    def add_vertex(self, v: int) -> None:
        if v not in self._adj:
            self._adj[v] = {}

    def add_edge(self, u: int, v: int, key: int | None = None) -> int:
        """Add one parallel copy of the edge {u, v}; returns its key."""
        if u == v:
            raise ValueError(f"self-loop at vertex {u} is not allowed")
        if key is None:
            key = self._next_key
        elif key in self._edges:
            raise ValueError(f"edge key {key} already in use")
        self._next_key = max(self._next_key, key + 1)
        self.add_vertex(u)
        self.add_vertex(v)
        self._adj[u].setdefault(v, []).append(key)
        self._adj[v].setdefault(u, []).append(key)
        self._edges[key] = (u, v)
        return key

    def remove_edge(self, key: int) -> None:
        u, v = self._edges.pop(key)
        self._adj[u][v].remove(key)
        if not self._adj[u][v]:
            del self._adj[u][v]
        self._adj[v][u].remove(key)
        if not self._adj[v][u]:
            del self._adj[v][u]

    def copy(self) -> "MultiGraph":
        g = MultiGraph()
        g._adj = {v: {w: list(ks) for w, ks in nbrs.items()} for v, nbrs in self._adj.items()}
        g._edges = dict(self._edges)
        g._next_key = self._next_key
        return g

    # -- queries ------------------------------------------------------

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def vertices(self) -> Iterator[int]:
        return iter(self._adj)

    def edge_items(self) -> Iterator[tuple[int, tuple[int, int]]]:
        return iter(self._edges.items())

    def endpoints(self, key: int) -> tuple[int, int]:
        return self._edges[key]

    def neighbors(self, v: int) -> Iterator[tuple[int, int]]:
        """Yield (edge_key, other_endpoint), once per parallel copy."""
        for w, keys in self._adj[v].items():
            for k in keys:
                yield k, w

    def adjacent_vertices(self, v: int) -> Iterator[int]:
        return iter(self._adj[v])

    def multiplicity(self, u: int, v: int) -> int:
        return len(self._adj.get(u, {}).get(v, ()))

    def degree(self, v: int) -> int:
        """Number of incident edge endpoints, counting parallel copies."""
        return sum(len(ks) for ks in self._adj[v].values())

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def size(self) -> int:
        """Vertices plus edges; the quantity bounded by the reducers."""
        return len(self._adj) + len(self._edges)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MultiGraph(|V|={self.vertex_count}, |E|={self.edge_count})"


def contract(g: MultiGraph, partition: VertexPartition) -> tuple[MultiGraph, dict[int, int]]:
    """Quotient ``g`` by a vertex partition.

    The result has one fresh vertex per partition label.  Edges whose
    endpoints fall into distinct labels survive with their original keys
    (parallel copies preserved); edges internal to a label would become
    self-loops and are dropped.  Returns the quotient graph and the map
    from original vertices to quotient vertices.
    """
    labels = sorted(set(partition[v] for v in g.vertices()))
    label_to_new = {lab: i for i, lab in enumerate(labels)}
    vmap = {v: label_to_new[partition[v]] for v in g.vertices()}
    h = MultiGraph(vertices=label_to_new.values())
    for key, (u, v) in g.edge_items():
        a, b = vmap[u], vmap[v]
        if a != b:
            h.add_edge(a, b, key=key)
    return h, vmap
