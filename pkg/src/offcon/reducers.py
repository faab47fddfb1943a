"""Active-cut-equivalent graph reduction for the four query modes.

Each reducer takes a graph of permanent edges plus the set of active
vertices (everything named by events in the current window) and produces
a small equivalent graph together with a surjection ``f`` from active
vertices onto their images.  Cuts of size below the mode's level that
separate active vertices are preserved exactly for the edge modes and
existentially for the vertex modes; two active vertices are merged only
when they cannot be separated by any such cut.

Output sizes are bounded by a per-mode constant times the number of
active vertices; ``reduce`` asserts the bound and raises when a rewrite
rule failed to reach exhaustion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import count

from .decompositions import (
    _block_decomposition,
    connected_components,
    three_edge_components,
    two_edge_components,
)
from .multigraph import MultiGraph
from .spqr import SpqrTree, cycle_order, spqr_tree
from .static_query import QueryMode


class ReductionSizeError(RuntimeError):
    """A reducer exceeded its size budget: some rule was not exhausted."""


@dataclass(frozen=True)
class ReducedGraph:
    graph: MultiGraph
    f: dict[int, int]
    size_stats: tuple[int, int]  # (vertices, edges)

    @property
    def size(self) -> int:
        return self.size_stats[0] + self.size_stats[1]


@dataclass(frozen=True)
class ReduceConfig:
    """Per-mode output size ceilings (size <= c * max(1, actives))."""

    c_2e: int = 8
    c_3e: int = 24
    c_bc: int = 24
    c_tc: int = 64
    k0: int = 1

    def bound_for(self, mode: QueryMode) -> int:
        return {
            ("edge", 2): self.c_2e,
            ("edge", 3): self.c_3e,
            ("vertex", 2): self.c_bc,
            ("vertex", 3): self.c_tc,
        }[(mode.flavor, mode.level)]


DEFAULT_CONFIG = ReduceConfig()


def _emit(
    vertices: list[int],
    edges: list[tuple[int, int]],
    image: dict[int, int],
    active: set[int],
) -> ReducedGraph:
    """Relabel working vertices to a compact namespace and build f."""
    order = sorted(set(vertices))
    ids = {v: i for i, v in enumerate(order)}
    g = MultiGraph(vertices=ids.values())
    for a, b in edges:
        g.add_edge(ids[a], ids[b])
    f = {a: ids[image[a]] for a in active}
    return ReducedGraph(graph=g, f=f, size_stats=(g.vertex_count, g.edge_count))


# -- 2-edge connectivity ----------------------------------------------


def reduce_2edge(g: MultiGraph, active: set[int]) -> ReducedGraph:
    """Contract 2-edge-connected components, then prune the forest.

    Inactive leaves are removed and inactive degree-2 vertices spliced
    into a single edge until every leaf is active and inactive interior
    vertices have degree at least three.
    """
    active = set(active)
    _, part = two_edge_components(g)
    adj: dict[int, set[int]] = {lab: set() for lab in set(part.values())}
    for key, (u, v) in g.edge_items():
        a, b = part[u], part[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    hot = {part[a] for a in active if a in part}

    removed: set[int] = set()
    queue = deque(lab for lab in adj if lab not in hot and len(adj[lab]) <= 2)
    while queue:
        lab = queue.popleft()
        if lab in removed or lab in hot:
            continue
        nbrs = adj[lab] - removed
        if len(nbrs) > 2:
            continue
        removed.add(lab)
        if len(nbrs) == 2:
            x, y = nbrs
            adj[x].discard(lab)
            adj[y].discard(lab)
            adj[x].add(y)
            adj[y].add(x)
        elif len(nbrs) == 1:
            (x,) = nbrs
            adj[x].discard(lab)
            if x not in hot and len(adj[x] - removed) <= 2:
                queue.append(x)

    vertices = [lab for lab in adj if lab not in removed]
    edges = []
    for lab in vertices:
        for other in adj[lab]:
            if other not in removed and lab < other:
                edges.append((lab, other))
    image = {a: part[a] for a in active if a in part}
    extra = count(max(vertices, default=0) + max(active, default=0) + 1)
    for a in sorted(active):
        if a not in part:
            fresh = next(extra)
            vertices.append(fresh)
            image[a] = fresh
    return _emit(vertices, edges, image, active)


# -- 3-edge connectivity ----------------------------------------------


def _adj_degree(adj: dict[int, dict[int, int]], v: int) -> int:
    return sum(adj[v].values())


def _drop_adj_vertex(adj: dict[int, dict[int, int]], v: int) -> None:
    for w in list(adj[v]):
        del adj[w][v]
    del adj[v]


def reduce_3edge(g: MultiGraph, active: set[int]) -> ReducedGraph:
    """Contract 3-edge-connected components and prune the cactus.

    The contracted graph is a cactus per component.  Inactive leaves are
    removed, inactive degree-2 vertices spliced (parallel edges allowed,
    a splice whose neighbors coincide just disappears), and inactive
    cycles attached to the rest at no more than two vertices contracted
    to a point, all to exhaustion.
    """
    active = set(active)
    part = three_edge_components(g)
    adj: dict[int, dict[int, int]] = {lab: {} for lab in set(part.values())}
    for _, (u, v) in g.edge_items():
        a, b = part[u], part[v]
        if a != b:
            adj[a][b] = adj[a].get(b, 0) + 1
            adj[b][a] = adj[b].get(a, 0) + 1
    hot = {part[a] for a in active if a in part}
    merged: dict[int, int] = {}  # original label -> surviving label

    def resolve(lab: int) -> int:
        while lab in merged:
            lab = merged[lab]
        return lab

    changed = True
    while changed:
        changed = False
        # inactive components vanish entirely
        seen: set[int] = set()
        for root in list(adj):
            if root in seen or root not in adj:
                continue
            comp = [root]
            seen.add(root)
            idx = 0
            while idx < len(comp):
                for w in adj[comp[idx]]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                idx += 1
            if not any(v in hot for v in comp):
                for v in comp:
                    _drop_adj_vertex(adj, v)
                changed = True
        # leaves and degree-2 splices
        queue = deque(v for v in adj if v not in hot and _adj_degree(adj, v) <= 2)
        while queue:
            v = queue.popleft()
            if v not in adj or v in hot:
                continue
            d = _adj_degree(adj, v)
            if d > 2:
                continue
            nbrs = list(adj[v])
            if d == 0:
                del adj[v]
            elif d == 1 or len(nbrs) == 1:
                # a leaf, or two parallel edges to one neighbor: v hangs alone
                (x,) = nbrs
                _drop_adj_vertex(adj, v)
                if x not in hot and _adj_degree(adj, x) <= 2:
                    queue.append(x)
            else:
                x, y = nbrs
                _drop_adj_vertex(adj, v)
                adj[x][y] = adj[x].get(y, 0) + 1
                adj[y][x] = adj[y].get(x, 0) + 1
            changed = True
        # contract inactive cycles with at most two attachment vertices
        work = MultiGraph(vertices=adj)
        for v in adj:
            for w, mult in adj[v].items():
                if v < w:
                    for _ in range(mult):
                        work.add_edge(v, w)
        blocks_v, blocks_e, cuts = _block_decomposition(work)
        union: dict[int, int] = {}

        def find(x: int) -> int:
            while union.get(x, x) != x:
                union[x] = union.get(union[x], union[x])
                x = union[x]
            return x

        did_contract = False
        for verts, keys in zip(blocks_v, blocks_e):
            if len(keys) < 2:
                continue
            if any(v in hot for v in verts):
                continue
            if len(verts & cuts) > 2:
                continue
            members = sorted(verts)
            root = find(members[0])
            for v in members[1:]:
                union[find(v)] = root
            did_contract = True
        if did_contract:
            changed = True
            new_adj: dict[int, dict[int, int]] = {}
            for v in adj:
                new_adj.setdefault(find(v), {})
            for v in adj:
                rv = find(v)
                for w, mult in adj[v].items():
                    rw = find(w)
                    if rv < rw:
                        new_adj[rv][rw] = new_adj[rv].get(rw, 0) + mult
                        new_adj.setdefault(rw, {})[rv] = new_adj[rv][rw]
            for v in list(adj):
                rv = find(v)
                if rv != v:
                    merged[v] = rv
            adj = new_adj

    vertices = list(adj)
    edges = []
    for v in adj:
        for w, mult in adj[v].items():
            if v < w:
                edges.extend([(v, w)] * min(mult, 3))
    image = {a: resolve(part[a]) for a in active if a in part}
    extra = count(max(vertices, default=0) + max(active, default=0) + 1)
    for a in sorted(active):
        if a not in part:
            fresh = next(extra)
            vertices.append(fresh)
            image[a] = fresh
    return _emit(vertices, edges, image, active)


# -- shared block-forest pruning (vertex modes) ------------------------


@dataclass
class _BlockStructure:
    alive: list[tuple[frozenset[int], frozenset[int], frozenset[int]]]
    # (vertices, edge keys, junction vertices) per surviving block
    chain_edges: list[tuple[int, int]]
    kept_vertices: list[int]


def _pruned_block_structure(g: MultiGraph, active: set[int]) -> _BlockStructure:
    """Drop inactive components, strip inactive leaf blocks, and replace
    maximal chains of fully inactive two-junction blocks by single edges."""
    comp = connected_components(g)
    active_comps = {comp[a] for a in active if g.has_vertex(a)}
    blocks_v, blocks_e, _ = _block_decomposition(g)
    idxs = [
        i for i in range(len(blocks_v)) if comp[min(blocks_v[i])] in active_comps
    ]
    incident: dict[int, set[int]] = {}
    for i in idxs:
        for v in blocks_v[i]:
            incident.setdefault(v, set()).add(i)
    alive = set(idxs)
    kept: list[int] = []

    def junctions(i: int) -> list[int]:
        return [v for v in blocks_v[i] if len(incident[v]) >= 2]

    queue = deque(idxs)
    while queue:
        i = queue.popleft()
        if i not in alive:
            continue
        cuts_i = junctions(i)
        if len(cuts_i) > 1:
            continue
        if any(v in active and v not in cuts_i for v in blocks_v[i]):
            continue
        alive.remove(i)
        for v in blocks_v[i]:
            incident[v].remove(i)
            if len(incident[v]) == 1:
                queue.append(next(iter(incident[v])))
            elif not incident[v] and v in active:
                kept.append(v)

    # maximal chains of inactive blocks with exactly two junctions
    def chain_ok(i: int) -> bool:
        return (
            i in alive
            and len(junctions(i)) == 2
            and not any(v in active for v in blocks_v[i])
        )

    chain_edges: list[tuple[int, int]] = []
    eligible = sorted(i for i in alive if chain_ok(i))
    visited: set[int] = set()
    for start in eligible:
        if start in visited:
            continue
        chain = deque([start])
        visited.add(start)
        # walk outwards in both directions
        for head in (True, False):
            cur = chain[0] if head else chain[-1]
            while True:
                step = None
                for c in junctions(cur):
                    if len(incident[c]) != 2:
                        continue
                    other = next(j for j in incident[c] if j != cur)
                    if other not in visited and chain_ok(other):
                        step = other
                        break
                if step is None:
                    break
                visited.add(step)
                if head:
                    chain.appendleft(step)
                else:
                    chain.append(step)
                cur = step
        if len(chain) < 2:
            continue

        def outer_cut(term: int, inner: int) -> int:
            for c in junctions(term):
                if inner not in incident[c] or len(incident[c]) != 2:
                    return c
            raise AssertionError("chain terminal without an outer junction")

        first, last = chain[0], chain[-1]
        u = outer_cut(first, chain[1])
        v = outer_cut(last, chain[-2])
        chain_edges.append((u, v) if u < v else (v, u))
        for i in chain:
            alive.remove(i)
            for w in blocks_v[i]:
                incident[w].remove(i)

    chain_deg: dict[int, int] = {}
    for u, v in chain_edges:
        chain_deg[u] = chain_deg.get(u, 0) + 1
        chain_deg[v] = chain_deg.get(v, 0) + 1

    final: list[tuple[frozenset[int], frozenset[int], frozenset[int]]] = []
    for i in sorted(alive):
        junc = frozenset(
            v
            for v in blocks_v[i]
            if len(incident[v]) + chain_deg.get(v, 0) >= 2
        )
        final.append((blocks_v[i], blocks_e[i], junc))

    # isolated active vertices of active components
    for v in g.vertices():
        if v in active and g.degree(v) == 0:
            kept.append(v)
    return _BlockStructure(alive=final, chain_edges=chain_edges, kept_vertices=kept)


# -- biconnectivity -----------------------------------------------------


def reduce_bicon(g: MultiGraph, active: set[int]) -> ReducedGraph:
    """Prune the block forest, then turn every surviving block into a
    cycle through its junction and active vertices."""
    active = set(active)
    structure = _pruned_block_structure(g, active)
    vertices: list[int] = list(structure.kept_vertices)
    edges: list[tuple[int, int]] = list(structure.chain_edges)
    for u, v in structure.chain_edges:
        vertices.extend((u, v))
    for verts, _, junc in structure.alive:
        anchors = sorted(junc | (verts & active))
        vertices.extend(anchors)
        if len(anchors) == 2:
            edges.append((anchors[0], anchors[1]))
        elif len(anchors) >= 3:
            for i in range(len(anchors)):
                edges.append((anchors[i], anchors[(i + 1) % len(anchors)]))
    image = {a: a for a in active if g.has_vertex(a)}
    extra = count(max(vertices, default=0) + max(active, default=0) + 1)
    for a in sorted(active):
        if not g.has_vertex(a):
            fresh = next(extra)
            vertices.append(fresh)
            image[a] = fresh
    return _emit(vertices, edges, image, active)


# -- triconnectivity ----------------------------------------------------


def _trim_biconnected(
    block: MultiGraph, terminals: set[int], fresh: "count[int]"
) -> tuple[set[int], list[tuple[int, int]]]:
    """Shrink a biconnected subgraph to a small graph preserving all
    vertex cuts of size below three among the terminal vertices.

    Works on the SPQR tree: fully inactive hanging components become
    single edges (their split pairs cannot be separated by removing two
    vertices), bundle skeletons keep at most three parallel copies,
    cycle skeletons are spliced down around their anchored vertices,
    rigid skeletons are rebuilt as wheels over their retained vertices,
    and chains of single-active-child nodes are compressed.
    """
    tree: SpqrTree = spqr_tree(block)
    nodes = tree.nodes
    n = len(nodes)
    kids = [node.children() for node in nodes]
    pair_set = [set(node.split_pair) if node.split_pair else set() for node in nodes]
    exact = [
        sorted(v for v in nodes[i].skeleton.vertices() if v in terminals and v not in pair_set[i])
        for i in range(n)
    ]
    sub_active = [False] * n
    for i in reversed(range(n)):
        sub_active[i] = bool(exact[i]) or any(sub_active[c] for c in kids[i])
    active_kids = [[c for c in kids[i] if sub_active[c]] for i in range(n)]
    parent_key: list[int | None] = [None] * n
    for i, node in enumerate(nodes):
        for key, (role, other) in node.edge_roles.items():
            if role == "virtual" and other == node.parent and node.parent is not None:
                parent_key[i] = key
                break

    def _s_keepers(nid: int) -> set[int]:
        node = nodes[nid]
        keep = {v for v in node.skeleton.vertices() if v in terminals}
        for key, (role, other) in node.edge_roles.items():
            if role == "virtual" and (other == node.parent or sub_active[other]):
                a, b = node.skeleton.endpoints(key)
                keep.update((a, b))
        return keep

    def materialize(
        nid: int, entry: tuple[int, int] | None, single_active: bool
    ) -> tuple[set[int], list[tuple[int, int]]]:
        node = nodes[nid]
        if (
            entry is not None
            and single_active
            and not exact[nid]
            and len(active_kids[nid]) == 1
        ):
            child = active_kids[nid][0]
            cpair = nodes[child].split_pair
            assert cpair is not None
            u, v = sorted(entry)
            x, y = cpair
            quad = (u, v, x, y)
            shared = {u, v} & {x, y}
            rename: dict[int, int] | None = None
            if not any(w in terminals for w in quad):
                rename = {x: u, y: v}
            elif len(shared) == 1:
                (w,) = shared
                if w in terminals and not any(
                    z in terminals for z in quad if z != w
                ):
                    xo = x if y == w else y
                    uo = u if v == w else v
                    rename = {xo: uo}
            if rename is not None:
                cverts, cedges = materialize(child, cpair, True)
                return (
                    {rename.get(a, a) for a in cverts},
                    [(rename.get(a, a), rename.get(b, b)) for a, b in cedges],
                )

        skel = node.skeleton
        roles = node.edge_roles
        pkey = parent_key[nid]
        out_verts: set[int] = set()
        out_edges: list[tuple[int, int]] = []

        if node.node_type == "P":
            u, v = sorted(skel.vertices())
            out_verts.update((u, v))
            plain = 0
            for key in roles:
                if key == pkey:
                    continue
                role, other = roles[key]
                if role == "real" or not sub_active[other]:
                    plain += 1
            for _ in range(min(plain, 3)):
                out_edges.append((u, v))
            for child in active_kids[nid]:
                cverts, cedges = materialize(
                    child, nodes[child].split_pair, len(active_kids[nid]) == 1
                )
                out_verts.update(cverts)
                out_edges.extend(cedges)
            return out_verts, out_edges

        if node.node_type == "S":
            ring = cycle_order(skel)
            L = len(ring)
            ring_edges: list[tuple[int, int, int]] = []
            for i in range(L):
                a, b = ring[i], ring[(i + 1) % L]
                key = next(k for k, w in skel.neighbors(a) if w == b)
                ring_edges.append((a, b, key))
            if pkey is not None:
                pos = next(i for i, (_, _, k) in enumerate(ring_edges) if k == pkey)
                ring_edges = ring_edges[pos + 1 :] + ring_edges[:pos]
                circular = False
            else:
                circular = True
                keepers0 = _s_keepers(nid)
                pos = min(i for i, v0 in enumerate(ring) if v0 in keepers0)
                ring_edges = ring_edges[pos:] + ring_edges[:pos]
            keepers = _s_keepers(nid)
            seq = [ring_edges[0][0]] + [b for _, b, _ in ring_edges]
            links = [ring_edges[i][2] for i in range(len(ring_edges))]
            # linear sequence seq[0..m]; when circular, seq[0] == seq[-1]
            keep_flags = [
                (i == 0 or i == len(seq) - 1 or seq[i] in keepers)
                for i in range(len(seq))
            ]
            survivors: list[int] = [0]
            i = 1
            while i < len(seq) - 1:
                if keep_flags[i]:
                    survivors.append(i)
                    i += 1
                    continue
                j = i
                while j < len(seq) - 1 and not keep_flags[j]:
                    j += 1
                left_active = seq[i - 1] in terminals
                right_active = seq[j] in terminals
                budget = min(j - i, int(left_active) + int(right_active))
                picks: list[int] = []
                if budget:
                    if left_active:
                        picks.append(i)
                    if right_active and len(picks) < budget:
                        picks.append(j - 1)
                survivors.extend(sorted(set(picks)))
                i = j
            survivors.append(len(seq) - 1)

            child_at: dict[int, int] = {}
            for idx, key in enumerate(links):
                role, other = roles[key]
                if role == "virtual" and other != node.parent and sub_active[other]:
                    child_at[idx] = other
            for a_i, b_i in zip(survivors, survivors[1:]):
                a_v, b_v = seq[a_i], seq[b_i]
                if b_i == a_i + 1 and a_i in child_at:
                    child = child_at[a_i]
                    cverts, cedges = materialize(
                        child, nodes[child].split_pair, len(active_kids[nid]) == 1
                    )
                    out_verts.update(cverts)
                    out_edges.extend(cedges)
                else:
                    out_edges.append((a_v, b_v))
                out_verts.update((a_v, b_v))
            return out_verts, out_edges

        # R node: rebuild as a wheel over the retained vertices
        retained = set(exact[nid])
        if entry is not None:
            retained.update(entry)
        child_pairs: list[tuple[int, tuple[int, int]]] = []
        for child in active_kids[nid]:
            cp = nodes[child].split_pair
            assert cp is not None
            retained.update(cp)
            child_pairs.append((child, cp))
        rim = sorted(retained)
        while len(rim) < 3:
            rim.append(next(fresh))
        hub = next(fresh)
        out_verts.update(rim)
        out_verts.add(hub)
        for i in range(len(rim)):
            out_edges.append((rim[i], rim[(i + 1) % len(rim)]))
            out_edges.append((hub, rim[i]))
        for child, cp in child_pairs:
            cverts, cedges = materialize(child, cp, len(active_kids[nid]) == 1)
            out_verts.update(cverts)
            out_edges.extend(cedges)
        return out_verts, out_edges

    return materialize(tree.root, None, False)


def reduce_tricon(g: MultiGraph, active: set[int]) -> ReducedGraph:
    """Prune the block forest, then shrink each surviving block through
    its SPQR tree with the block's junction and active vertices as the
    vertices to preserve."""
    active = set(active)
    structure = _pruned_block_structure(g, active)
    all_ids = [v for v in g.vertices()]
    all_ids.extend(active)
    fresh = count(max(all_ids, default=0) + 1)

    vertices: list[int] = list(structure.kept_vertices)
    edges: list[tuple[int, int]] = list(structure.chain_edges)
    for u, v in structure.chain_edges:
        vertices.extend((u, v))
    for verts, ekeys, junc in structure.alive:
        terminals = set(junc) | (verts & active)
        if len(ekeys) <= 2:
            for k in sorted(ekeys):
                a, b = g.endpoints(k)
                edges.append((a, b))
                vertices.extend((a, b))
            continue
        if len(terminals) <= 1:
            vertices.extend(terminals)
            continue
        sub = MultiGraph()
        for k in sorted(ekeys):
            a, b = g.endpoints(k)
            sub.add_edge(a, b, key=k)
        tverts, tedges = _trim_biconnected(sub, terminals, fresh)
        vertices.extend(tverts)
        edges.extend(tedges)
    image = {a: a for a in active if g.has_vertex(a)}
    for a in sorted(active):
        if not g.has_vertex(a):
            nv = next(fresh)
            vertices.append(nv)
            image[a] = nv
    return _emit(vertices, edges, image, active)


# -- dispatch -----------------------------------------------------------


def _identity_reduced(g: MultiGraph, active: set[int]) -> ReducedGraph:
    vertices = list(g.vertices())
    edges = [pair for _, pair in g.edge_items()]
    image = {a: a for a in active if g.has_vertex(a)}
    extra = count(max(vertices, default=0) + max(active, default=0) + 1)
    for a in sorted(active):
        if not g.has_vertex(a):
            fresh = next(extra)
            vertices.append(fresh)
            image[a] = fresh
    return _emit(vertices, edges, image, active)


def reduce(
    mode: QueryMode,
    g: MultiGraph,
    active: set[int],
    config: ReduceConfig = DEFAULT_CONFIG,
) -> ReducedGraph:
    """Dispatch to the mode's reducer and enforce the size budget.

    An already-small input is returned as-is (relabelled, identity map):
    reducing never grows a graph, so reduction composes monotonically.
    """
    if mode.flavor == "edge":
        reduced = reduce_2edge(g, active) if mode.level == 2 else reduce_3edge(g, active)
    else:
        reduced = reduce_bicon(g, active) if mode.level == 2 else reduce_tricon(g, active)
    missing = sum(1 for a in active if not g.has_vertex(a))
    if reduced.size >= g.size + missing:
        reduced = _identity_reduced(g, active)
    budget = config.bound_for(mode) * max(1, len(active))
    if reduced.size > budget:
        raise ReductionSizeError(
            f"{mode.code} reduction produced size {reduced.size} "
            f"for {len(active)} active vertices (budget {budget})"
        )
    return reduced
