"""Brute-force references the rest of the package is judged against.

``naive_answer`` replays a timeline against an explicit multigraph and
answers every query with a static check on the full current graph.
``cut_catalog`` enumerates, for small graphs, every minimal way to split
the active vertices with a cut below the mode's level, and
``check_equivalence`` compares those catalogs across a reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .decompositions import connected_components
from .multigraph import MultiGraph
from .static_query import PairQuery, QueryMode, pair_query, pair_query_enumerated
from .timeline import AnswerSheet, RawEvent, match_lifetimes

# One entry per realizable split of the active set by a cut of size below
# the mode's level: {frozenset({side1, side2}): minimal cut size}.
CutCatalog = dict[frozenset[frozenset[int]], int]

_CATALOG_VERTEX_LIMIT = 9


def naive_answer(events: Sequence[RawEvent], enumerated: bool = False) -> AnswerSheet:
    """Replay the timeline, answering each query on the current graph.

    With ``enumerated`` the definition-level cut enumeration is used
    instead of the decomposition-based checks (much slower; meant for
    cross-validating the static layer on small inputs).
    """
    instances, normalized = match_lifetimes(events)
    endpoints = {inst.edge_id: (inst.u, inst.v) for inst in instances}
    g = MultiGraph()
    sheet: AnswerSheet = {}
    ask = pair_query_enumerated if enumerated else pair_query
    for ev in normalized:
        if ev.kind == "I":
            u, v = endpoints[ev.edge_id]
            g.add_edge(u, v, key=ev.edge_id)
        elif ev.kind == "D":
            g.remove_edge(ev.edge_id)
        else:
            g.add_vertex(ev.u)
            g.add_vertex(ev.v)
            sheet[ev.index] = ask(g, PairQuery(ev.mode, ev.u, ev.v))
    return sheet


def _splits_of_components(
    comp_labels: dict[int, int], active: set[int]
) -> set[frozenset[frozenset[int]]]:
    """Active-set bipartitions realizable by grouping whole components."""
    groups: dict[int, frozenset[int]] = {}
    acc: dict[int, set[int]] = {}
    for v, lab in comp_labels.items():
        acc.setdefault(lab, set()).add(v)
    for lab, members in acc.items():
        groups[lab] = frozenset(members & active)
    labs = sorted(groups)
    if len(labs) < 2:
        return set()
    out: set[frozenset[frozenset[int]]] = set()
    for mask in range(1, 2 ** (len(labs) - 1)):
        side: set[int] = set()
        other: set[int] = set()
        for i, lab in enumerate(labs):
            (side if mask >> i & 1 else other).update(groups[lab])
        if side and other:
            out.add(frozenset((frozenset(side), frozenset(other))))
    return out


def cut_catalog(g: MultiGraph, active: set[int], mode: QueryMode) -> CutCatalog:
    """Enumerate all sub-level cuts separating the active set.

    Edge mode removes every single edge and (at level three) every edge
    pair; vertex mode removes every vertex and vertex pair, including
    active ones.  Each realizable bipartition of the active vertices is
    recorded with the smallest cut size realizing it.  Guarded to small
    graphs: this is the desk-scale reference, not a production path.
    """
    if g.vertex_count > _CATALOG_VERTEX_LIMIT:
        raise ValueError(
            f"cut_catalog is limited to {_CATALOG_VERTEX_LIMIT} vertices"
        )
    active = {a for a in active if g.has_vertex(a)}
    catalog: CutCatalog = {}

    def record(cut_size: int, labels: dict[int, int], removed: set[int] | None) -> None:
        rest = dict(labels)
        if removed:
            for v in removed:
                rest.pop(v, None)
        acts = active - (removed or set())
        for split in _splits_of_components(rest, acts):
            prev = catalog.get(split)
            if prev is None or cut_size < prev:
                catalog[split] = cut_size

    # the empty cut of size zero: actives already in distinct components
    record(0, connected_components(g), None)
    if mode.flavor == "edge":
        work = g.copy()
        keys = sorted(dict(g.edge_items()))
        cut_sets: list[tuple[int, ...]] = [(k,) for k in keys]
        if mode.level == 3:
            cut_sets.extend(combinations(keys, 2))
        for cut in cut_sets:
            eps = [work.endpoints(k) for k in cut]
            for k in cut:
                work.remove_edge(k)
            record(len(cut), connected_components(work), None)
            for k, (a, b) in zip(cut, eps):
                work.add_edge(a, b, key=k)
    else:
        verts = sorted(g.vertices())
        cut_sets_v: list[tuple[int, ...]] = [(w,) for w in verts]
        if mode.level == 3:
            cut_sets_v.extend(combinations(verts, 2))
        for cut in cut_sets_v:
            removed = set(cut)
            sub = MultiGraph(vertices=(v for v in verts if v not in removed))
            for _, (a, b) in g.edge_items():
                if a not in removed and b not in removed:
                    sub.add_edge(a, b)
            record(len(cut), connected_components(sub), removed)
    return catalog


@dataclass(frozen=True)
class EquivalenceReport:
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _map_split(
    split: frozenset[frozenset[int]], f: Mapping[int, int]
) -> frozenset[frozenset[int]] | None:
    sides = [frozenset(f[x] for x in side) for side in split]
    if len(sides) == 1:
        # both sides mapped to equal images: impossible for a valid f
        return None
    if sides[0] & sides[1]:
        return None
    return frozenset(sides)


def check_equivalence(
    g: MultiGraph,
    reduced,
    active: set[int],
    mode: QueryMode,
) -> EquivalenceReport:
    """Compare sub-level cut structure across a reduction.

    ``reduced`` is any object with a ``graph`` and an active-vertex map
    ``f``.  Edge modes need identical bipartitions at identical minimal
    sizes; vertex modes need the same set of realizable bipartitions.
    Merged active vertices must be inseparable in the source at the
    mode's level.
    """
    f = reduced.f
    active = set(active)
    for a in active:
        if a not in f:
            return EquivalenceReport(False, f"f undefined on active vertex {a}")
    by_image: dict[int, list[int]] = {}
    for a in sorted(active):
        by_image.setdefault(f[a], []).append(a)
    for image, members in by_image.items():
        rep = members[0]
        for other in members[1:]:
            probe = g if g.has_vertex(rep) and g.has_vertex(other) else None
            if probe is None or not pair_query(g, PairQuery(mode, rep, other)):
                return EquivalenceReport(
                    False,
                    f"actives {rep} and {other} merged into {image} but separable",
                )

    cat_g = cut_catalog(g, active, mode)
    cat_h = cut_catalog(reduced.graph, {f[a] for a in active}, mode)
    mapped: CutCatalog = {}
    for split, size in cat_g.items():
        key = _map_split(split, f)
        if key is None:
            return EquivalenceReport(False, f"cut {split} straddles merged actives")
        prev = mapped.get(key)
        if prev is None or size < prev:
            mapped[key] = size

    def show(split: frozenset[frozenset[int]]) -> str:
        a, b = sorted((sorted(side) for side in split))
        return f"{a}|{b}"

    for split, size in mapped.items():
        if split not in cat_h:
            return EquivalenceReport(False, f"lost bipartition {show(split)}")
        if mode.flavor == "edge" and cat_h[split] != size:
            return EquivalenceReport(
                False,
                f"bipartition {show(split)} has size {cat_h[split]} != {size}",
            )
    for split in cat_h:
        if split not in mapped:
            return EquivalenceReport(False, f"spurious bipartition {show(split)}")
        if mode.flavor == "edge" and mapped[split] != cat_h[split]:
            return EquivalenceReport(
                False,
                f"bipartition {show(split)} has size {cat_h[split]} != {mapped[split]}",
            )
    return EquivalenceReport(True)
