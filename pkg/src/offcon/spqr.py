"""SPQR decomposition of biconnected multigraphs.

The tree is built by repeatedly splitting along split pairs until every
piece is a parallel bundle, a cycle, or a simple triconnected graph, then
merging adjacent pieces of equal type (bundle/bundle or cycle/cycle).
The merged decomposition is unique, so the result does not depend on the
order in which splits are discovered.

Real edges stay inline in the skeletons; the tree therefore has no
single-edge leaf nodes.  Every virtual edge names the adjacent tree node
(its child, or its parent for the split-pair edge).
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompositions import _block_decomposition, connected_components
from .multigraph import MultiGraph

Role = tuple[str, int | None]  # ("real", None) or ("virtual", adjacent node id)


@dataclass
class SpqrNode:
    node_type: str  # "S" cycle, "P" bundle, "R" simple triconnected
    skeleton: MultiGraph
    edge_roles: dict[int, Role]
    split_pair: tuple[int, int] | None  # None at the root
    parent: int | None

    def children(self) -> list[int]:
        out = []
        for key in sorted(self.edge_roles):
            role, other = self.edge_roles[key]
            if role == "virtual" and other != self.parent:
                out.append(other)
        return out


@dataclass
class SpqrTree:
    nodes: list[SpqrNode]
    root: int


def is_biconnected(g: MultiGraph) -> bool:
    """Connected with a single block spanning every vertex."""
    if g.vertex_count < 2 or g.edge_count < 1:
        return False
    comp = connected_components(g)
    if len(set(comp.values())) > 1:
        return False
    blocks_v, _, _ = _block_decomposition(g)
    return len(blocks_v) == 1 and len(blocks_v[0]) == g.vertex_count


def _piece_vertices(piece: dict[int, tuple[int, int]]) -> set[int]:
    verts: set[int] = set()
    for a, b in piece.values():
        verts.add(a)
        verts.add(b)
    return verts


def _is_polygon(piece: dict[int, tuple[int, int]], verts: set[int]) -> bool:
    if len(piece) != len(verts) or len(verts) < 3:
        return False
    deg: dict[int, int] = {}
    for a, b in piece.values():
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(d == 2 for d in deg.values())


def _find_split(
    piece: dict[int, tuple[int, int]],
) -> tuple[int, int, list[int]] | None:
    """A split pair (u, v) plus one side of a valid edge bipartition.

    Both sides of a split must keep at least two of the piece's edges.
    Returns None when the piece is unsplittable (a triconnected atom).
    """
    m = len(piece)
    if m < 4:
        return None
    adj: dict[int, list[tuple[int, int]]] = {}
    for key, (a, b) in piece.items():
        adj.setdefault(a, []).append((key, b))
        adj.setdefault(b, []).append((key, a))
    verts = sorted(adj)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            classes: list[list[int]] = []
            direct: list[int] = []
            seen = {u, v}
            for s in verts:
                if s in seen:
                    continue
                comp_edges: set[int] = set()
                stack = [s]
                seen.add(s)
                while stack:
                    x = stack.pop()
                    for key, w in adj[x]:
                        comp_edges.add(key)
                        if w not in seen and w != u and w != v:
                            seen.add(w)
                            stack.append(w)
                classes.append(sorted(comp_edges))
            for key, w in adj[u]:
                if w == v:
                    direct.append(key)
            classes.extend([k] for k in sorted(direct))
            if len(classes) < 2:
                continue
            sizes = [len(c) for c in classes]
            big = max(range(len(classes)), key=lambda j: (sizes[j], -j))
            if sizes[big] >= 2 and m - sizes[big] >= 2:
                return u, v, classes[big]
            if all(s == 1 for s in sizes) and len(classes) >= 4:
                return u, v, classes[0] + classes[1]
    return None


def spqr_tree(g: MultiGraph) -> SpqrTree:
    """SPQR tree of a biconnected multigraph with at least three edges."""
    if g.edge_count < 3:
        raise ValueError("spqr_tree requires at least 3 edges")
    if not is_biconnected(g):
        raise ValueError("spqr_tree requires a biconnected graph")

    pieces: list[dict[int, tuple[int, int]]] = [dict(g.edge_items())]
    alive = [True]
    twin: dict[int, int] = {}
    vpiece: dict[int, int] = {}
    # virtual keys live strictly below every real key
    next_virtual = [min(min(pieces[0]), 0) - 1]

    def fresh_virtual() -> int:
        k = next_virtual[0]
        next_virtual[0] -= 1
        return k

    work = [0]
    while work:
        idx = work.pop()
        piece = pieces[idx]
        verts = _piece_vertices(piece)
        if len(verts) == 2 or _is_polygon(piece, verts):
            continue
        found = _find_split(piece)
        if found is None:
            continue
        u, v, side_keys = found
        side = set(side_keys)
        vk1, vk2 = fresh_virtual(), fresh_virtual()
        twin[vk1], twin[vk2] = vk2, vk1
        p1 = {k: piece[k] for k in piece if k in side}
        p2 = {k: piece[k] for k in piece if k not in side}
        p1[vk1] = (u, v)
        p2[vk2] = (u, v)
        pieces[idx] = p1
        new_idx = len(pieces)
        pieces.append(p2)
        alive.append(True)
        vpiece[vk1] = idx
        for k in p2:
            if k in twin:
                vpiece[k] = new_idx
        work.append(idx)
        work.append(new_idx)

    def piece_type(piece: dict[int, tuple[int, int]]) -> str:
        verts = _piece_vertices(piece)
        if len(verts) == 2:
            return "P"
        if _is_polygon(piece, verts):
            return "S"
        return "R"

    types = {i: piece_type(pieces[i]) for i in range(len(pieces)) if alive[i]}

    # Merge adjacent cycle/cycle and bundle/bundle pieces; the result is
    # the unique decomposition into bundles, polygons and rigid pieces.
    merged = True
    while merged:
        merged = False
        for vk in sorted(twin, reverse=True):
            if vk not in twin:
                continue
            vk2 = twin[vk]
            a, b = vpiece[vk], vpiece[vk2]
            if a == b or not (alive[a] and alive[b]):
                continue
            ta, tb = types[a], types[b]
            if ta != tb or ta == "R":
                continue
            del pieces[a][vk]
            del pieces[b][vk2]
            del twin[vk], twin[vk2]
            del vpiece[vk], vpiece[vk2]
            for k in pieces[b]:
                if k in twin:
                    vpiece[k] = a
            pieces[a].update(pieces[b])
            alive[b] = False
            del types[b]
            merged = True

    # Root at the piece holding the smallest real edge key, then lay the
    # nodes out in BFS order.
    real_home: dict[int, int] = {}
    for i in range(len(pieces)):
        if alive[i]:
            for k in pieces[i]:
                if k not in twin:
                    real_home[k] = i
    root_piece = real_home[min(real_home)]

    node_of_piece: dict[int, int] = {root_piece: 0}
    order = [root_piece]
    parent_vk: dict[int, int | None] = {root_piece: None}
    queue = [root_piece]
    while queue:
        cur = queue.pop(0)
        for vk in sorted(pieces[cur], reverse=True):
            if vk not in twin:
                continue
            other = vpiece[twin[vk]]
            if other not in node_of_piece:
                node_of_piece[other] = len(order)
                order.append(other)
                parent_vk[other] = twin[vk]
                queue.append(other)

    nodes: list[SpqrNode] = []
    for pid in order:
        piece = pieces[pid]
        skel = MultiGraph()
        roles: dict[int, Role] = {}
        for k in sorted(piece):
            a, b = piece[k]
            skel.add_edge(a, b, key=k)
            if k in twin:
                roles[k] = ("virtual", node_of_piece[vpiece[twin[k]]])
            else:
                roles[k] = ("real", None)
        pvk = parent_vk[pid]
        if pvk is None:
            split_pair = None
            parent = None
        else:
            a, b = piece[pvk]
            split_pair = (a, b) if a < b else (b, a)
            parent = node_of_piece[vpiece[twin[pvk]]]
        nodes.append(
            SpqrNode(
                node_type=types[pid],
                skeleton=skel,
                edge_roles=roles,
                split_pair=split_pair,
                parent=parent,
            )
        )
    return SpqrTree(nodes=nodes, root=0)


def reconstruct_edges(tree: SpqrTree) -> dict[int, tuple[int, int]]:
    """Real edges of all skeletons; merging along virtual edges yields
    exactly this multiset over the original vertex names."""
    out: dict[int, tuple[int, int]] = {}
    for node in tree.nodes:
        for key, (role, _) in node.edge_roles.items():
            if role == "real":
                out[key] = node.skeleton.endpoints(key)
    return out


def _subtree_vertex_counts(tree: SpqrTree) -> list[int]:
    counts = [0] * len(tree.nodes)
    for i in range(len(tree.nodes) - 1, -1, -1):
        node = tree.nodes[i]
        total = node.skeleton.vertex_count
        for c in node.children():
            total += counts[c] - 2
        counts[i] = total
    return counts


def cycle_order(skeleton: MultiGraph) -> list[int]:
    """Vertices of a cycle skeleton in traversal order (deterministic)."""
    start = min(skeleton.vertices())
    order = [start]
    prev_key = None
    cur = start
    while True:
        nxt = None
        for k, w in sorted(skeleton.neighbors(cur)):
            if k != prev_key:
                nxt = (k, w)
                break
        assert nxt is not None
        prev_key, cur = nxt
        if cur == start:
            break
        order.append(cur)
    return order


def separation_pairs(tree: SpqrTree, total_vertices: int) -> frozenset[frozenset[int]]:
    """All separation pairs of the underlying graph, read off the tree.

    Candidates are vertex pairs of S-skeleton cycles, P split pairs, and
    R-skeleton edges; a candidate qualifies when both sides of the split
    hold at least one vertex besides the pair itself.
    """
    counts = _subtree_vertex_counts(tree)
    internal = [max(0, counts[i] - 2) for i in range(len(tree.nodes))]

    def far_side(node_id: int, key: int) -> int:
        role, other = tree.nodes[node_id].edge_roles[key]
        if role == "real":
            return 0
        if other == tree.nodes[node_id].parent:
            return total_vertices - counts[node_id]
        return internal[other]

    pairs: set[frozenset[int]] = set()
    for nid, node in enumerate(tree.nodes):
        skel = node.skeleton
        if node.node_type == "P":
            u, v = sorted(skel.vertices())
            sides = sum(1 for key in dict(skel.edge_items()) if far_side(nid, key) >= 1)
            if sides >= 2:
                pairs.add(frozenset((u, v)))
        elif node.node_type == "S":
            ring = cycle_order(skel)
            n = len(ring)
            for i in range(n):
                for j in range(i + 1, n):
                    u, v = ring[i], ring[j]
                    if j - i == 1 or (i == 0 and j == n - 1):
                        keys = [k for k, w in skel.neighbors(u) if w == v]
                        if any(far_side(nid, k) >= 1 for k in keys):
                            pairs.add(frozenset((u, v)))
                    else:
                        pairs.add(frozenset((u, v)))
        else:
            for key, (u, v) in skel.edge_items():
                role, _ = node.edge_roles[key]
                if role != "virtual":
                    continue
                if far_side(nid, key) >= 1 and total_vertices - 2 - far_side(nid, key) >= 1:
                    pairs.add(frozenset((u, v)))
    return frozenset(pairs)
