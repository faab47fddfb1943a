"""Event timelines and the recursive interval-halving driver.

A timeline is a sequence of edge inserts, edge deletes and pair queries,
fully known up front.  Deletes are matched FIFO to the oldest open insert
with the same endpoints, giving every edge occurrence a lifetime
``[inserted_at, deleted_at)`` measured in event positions (``t + 1`` when
never deleted).

Queries are answered by halving the event range recursively.  Edges alive
across a whole subinterval are "permanent" there and get folded into a
small equivalent graph before recursing, so the graph a child works on is
proportional to its own event count.  At the bottom the remaining
constant-size graph is materialised and queried directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .multigraph import MultiGraph
from .reducers import DEFAULT_CONFIG, ReduceConfig, ReducedGraph
from .reducers import reduce as reduce_graph
from .static_query import MODES_BY_CODE, PairQuery, QueryMode, pair_query

RawEvent = tuple
AnswerSheet = dict[int, bool]


class EventError(ValueError):
    """A semantically invalid event; carries its 1-based index."""

    def __init__(self, index: int, reason: str) -> None:
        super().__init__(f"event {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class Event:
    index: int
    kind: str  # "I", "D" or "Q"
    edge_id: int | None = None
    mode: QueryMode | None = None
    u: int | None = None
    v: int | None = None


@dataclass(frozen=True)
class EdgeInstance:
    edge_id: int
    u: int
    v: int
    inserted_at: int
    deleted_at: int  # t + 1 when the edge outlives the timeline


def match_lifetimes(
    events: Sequence[RawEvent],
) -> tuple[list[EdgeInstance], list[Event]]:
    """Pair deletes with inserts and assign edge identities.

    Raw events are tuples: ``("I", u, v)``, ``("D", u, v)`` or
    ``("Q", code, u, v)`` with code one of 2E/3E/BC/TC.  Deletion matches
    the oldest open occurrence with the same endpoints; occurrences never
    deleted end at ``t + 1``.
    """
    t = len(events)
    open_by_pair: dict[frozenset[int], list[int]] = {}
    records: list[list[int]] = []  # [u, v, inserted_at, deleted_at]
    out: list[Event] = []
    for idx, raw in enumerate(events, start=1):
        kind = raw[0]
        if kind == "I":
            _, u, v = raw
            if u == v:
                raise EventError(idx, f"insert of self-loop at vertex {u}")
            eid = len(records)
            records.append([u, v, idx, t + 1])
            open_by_pair.setdefault(frozenset((u, v)), []).append(eid)
            out.append(Event(index=idx, kind="I", edge_id=eid))
        elif kind == "D":
            _, u, v = raw
            if u == v:
                raise EventError(idx, f"delete of self-loop at vertex {u}")
            bucket = open_by_pair.get(frozenset((u, v)))
            if not bucket:
                raise EventError(idx, f"delete of absent edge ({u}, {v})")
            eid = bucket.pop(0)
            records[eid][3] = idx
            out.append(Event(index=idx, kind="D", edge_id=eid))
        elif kind == "Q":
            _, code, u, v = raw
            if u == v:
                raise EventError(idx, "query endpoints must differ")
            mode = MODES_BY_CODE.get(code)
            if mode is None:
                raise EventError(idx, f"unknown query mode {code!r}")
            out.append(Event(index=idx, kind="Q", mode=mode, u=u, v=v))
        else:
            raise EventError(idx, f"unknown event kind {kind!r}")
    instances = [
        EdgeInstance(edge_id=i, u=r[0], v=r[1], inserted_at=r[2], deleted_at=r[3])
        for i, r in enumerate(records)
    ]
    return instances, out


@dataclass(frozen=True)
class EdgeClassification:
    permanent: tuple[EdgeInstance, ...]
    present_at_start: tuple[EdgeInstance, ...]
    inserted_in_interval: tuple[EdgeInstance, ...]


def classify_edges(
    instances: Iterable[EdgeInstance], interval: tuple[int, int]
) -> EdgeClassification:
    """Sort edge occurrences by their role within ``[l, r]``.

    Permanent edges are alive strictly across the interval; edges whose
    insertion precedes it but whose deletion falls inside are present at
    the start; edges inserted inside the interval form the third class.
    Occurrences not overlapping the interval are omitted.
    """
    l, r = interval
    if l > r:
        raise ValueError("empty interval")
    perm: list[EdgeInstance] = []
    start: list[EdgeInstance] = []
    inside: list[EdgeInstance] = []
    for inst in instances:
        i, d = inst.inserted_at, inst.deleted_at
        if d < l or i > r:
            continue
        if i < l and r < d:
            perm.append(inst)
        elif i < l:
            start.append(inst)
        else:
            inside.append(inst)
    return EdgeClassification(tuple(perm), tuple(start), tuple(inside))


@dataclass
class IntervalContext:
    """Everything one recursion node needs, in its own vertex namespace."""

    interval: tuple[int, int]
    base_vertices: set[int]
    base_edges: list[tuple[int, int]]
    present_at_start: list[int]  # edge ids alive at the interval start
    events: list[Event]
    endpoints: dict[int, tuple[int, int]]  # edge id -> current endpoints
    lifetimes: dict[int, tuple[int, int]]  # edge id -> global (i_e, d_e)

    @property
    def base_graph(self) -> MultiGraph:
        g = MultiGraph(vertices=self.base_vertices)
        for i, (u, v) in enumerate(self.base_edges):
            g.add_edge(u, v, key=-1 - i)
        return g


def active_vertices(ctx: IntervalContext) -> set[int]:
    """Vertices named by any event of the context."""
    act: set[int] = set()
    for ev in ctx.events:
        if ev.kind == "Q":
            act.add(ev.u)
            act.add(ev.v)
        else:
            u, v = ctx.endpoints[ev.edge_id]
            act.add(u)
            act.add(v)
    return act


@dataclass(frozen=True)
class EngineConfig:
    reduce_config: ReduceConfig = DEFAULT_CONFIG
    k0: int = 1  # materialise and answer directly at or below this size
    reduce_slack: float = 4.0  # skip reduction while base <= slack * events
    validate: bool = False


@dataclass
class RunStats:
    reduce_calls: int = 0
    max_reduced_size: int = 0
    max_depth: int = 0
    events_per_depth: dict[int, int] = field(default_factory=dict)


Reducer = Callable[[QueryMode, MultiGraph, set[int], ReduceConfig], ReducedGraph]


def _replay_and_answer(ctx: IntervalContext, sheet: AnswerSheet) -> None:
    g = MultiGraph(vertices=ctx.base_vertices)
    for i, (u, v) in enumerate(ctx.base_edges):
        g.add_edge(u, v, key=-1 - i)
    for eid in ctx.present_at_start:
        u, v = ctx.endpoints[eid]
        g.add_edge(u, v, key=eid)
    for ev in ctx.events:
        if ev.kind == "I":
            u, v = ctx.endpoints[ev.edge_id]
            g.add_edge(u, v, key=ev.edge_id)
        elif ev.kind == "D":
            g.remove_edge(ev.edge_id)
        else:
            g.add_vertex(ev.u)
            g.add_vertex(ev.v)
            sheet[ev.index] = pair_query(g, PairQuery(ev.mode, ev.u, ev.v))


def _validate_ctx(ctx: IntervalContext) -> None:
    l, r = ctx.interval
    last = l - 1
    for ev in ctx.events:
        assert last < ev.index <= r, "event indices must be increasing in range"
        last = ev.index
    touched = {ev.edge_id for ev in ctx.events if ev.kind != "Q"}
    touched.update(ctx.present_at_start)
    assert len(touched) <= r - l + 1, "non-permanent edge budget exceeded"
    for eid in ctx.present_at_start:
        i, d = ctx.lifetimes[eid]
        assert i < l <= d <= r, "present-at-start lifetime outside interval"


def _solve(
    ctx: IntervalContext,
    cfg: EngineConfig,
    reduce_fn: Reducer,
    sheet: AnswerSheet,
    stats: RunStats | None,
    depth: int,
) -> None:
    events = ctx.events
    k = len(events)
    if k == 0 or not any(ev.kind == "Q" for ev in events):
        return
    if cfg.validate:
        _validate_ctx(ctx)
    if stats is not None:
        stats.max_depth = max(stats.max_depth, depth)
        stats.events_per_depth[depth] = stats.events_per_depth.get(depth, 0) + k
    if k <= cfg.k0:
        _replay_and_answer(ctx, sheet)
        return

    base_size = len(ctx.base_vertices) + len(ctx.base_edges)
    f: dict[int, int] | None = None
    if base_size > cfg.reduce_slack * k:
        active = active_vertices(ctx)
        mode = next(ev.mode for ev in events if ev.kind == "Q")
        red = reduce_fn(mode, ctx.base_graph, active, cfg.reduce_config)
        f = red.f
        h_vertices = set(red.graph.vertices())
        h_edges = [pair for _, pair in red.graph.edge_items()]
        if stats is not None:
            stats.reduce_calls += 1
            stats.max_reduced_size = max(stats.max_reduced_size, red.size)
    else:
        h_vertices = ctx.base_vertices
        h_edges = ctx.base_edges

    mid = (k + 1) // 2
    l, r = ctx.interval
    split = events[mid - 1].index
    relevant = set(ctx.present_at_start)
    relevant.update(ev.edge_id for ev in events if ev.kind != "Q")

    for half, (cl, cr) in (
        (events[:mid], (l, split)),
        (events[mid:], (split + 1, r)),
    ):
        if not any(ev.kind == "Q" for ev in half):
            continue
        base_v = set(h_vertices)
        base_e = list(h_edges)
        present: list[int] = []
        eps: dict[int, tuple[int, int]] = {}
        for eid in relevant:
            i, d = ctx.lifetimes[eid]
            if d < cl or i > cr:
                continue
            u0, v0 = ctx.endpoints[eid]
            if f is not None:
                u0, v0 = f[u0], f[v0]
                if u0 == v0:
                    continue  # endpoints merged: the edge can't matter here
            if i < cl and cr < d:
                base_v.add(u0)
                base_v.add(v0)
                base_e.append((u0, v0))
            elif i < cl:
                present.append(eid)
                eps[eid] = (u0, v0)
            else:
                eps[eid] = (u0, v0)
        child_events: list[Event] = []
        for ev in half:
            if ev.kind == "Q":
                qu, qv = ev.u, ev.v
                if f is not None:
                    qu, qv = f[qu], f[qv]
                    if qu == qv:
                        # merged endpoints stay connected at the required
                        # level through permanent edges alone
                        sheet[ev.index] = True
                        continue
                child_events.append(
                    Event(index=ev.index, kind="Q", mode=ev.mode, u=qu, v=qv)
                )
            elif ev.edge_id in eps:
                child_events.append(ev)
        child = IntervalContext(
            interval=(cl, cr),
            base_vertices=base_v,
            base_edges=base_e,
            present_at_start=present,
            events=child_events,
            endpoints=eps,
            lifetimes=ctx.lifetimes,
        )
        _solve(child, cfg, reduce_fn, sheet, stats, depth + 1)


def answer_queries(
    ctx: IntervalContext,
    cfg: EngineConfig | None = None,
    reduce_fn: Reducer = reduce_graph,
    stats: RunStats | None = None,
) -> AnswerSheet:
    """Answer the query events of one interval context."""
    sheet: AnswerSheet = {}
    _solve(ctx, cfg or EngineConfig(), reduce_fn, sheet, stats, depth=0)
    return sheet


def run(
    events: Sequence[RawEvent],
    cfg: EngineConfig | None = None,
    stats: RunStats | None = None,
) -> AnswerSheet:
    """Answer every query of a raw timeline.

    Queries are grouped by mode; one driver pass runs per mode present,
    each carrying all inserts and deletes but only that mode's queries.
    The merged sheet maps event indices to booleans.
    """
    cfg = cfg or EngineConfig()
    instances, normalized = match_lifetimes(events)
    t = len(events)
    lifetimes = {inst.edge_id: (inst.inserted_at, inst.deleted_at) for inst in instances}
    endpoints = {inst.edge_id: (inst.u, inst.v) for inst in instances}
    sheet: AnswerSheet = {}
    modes = sorted(
        {ev.mode for ev in normalized if ev.kind == "Q"}, key=lambda m: m.code
    )
    for mode in modes:
        pass_events = [
            ev for ev in normalized if ev.kind != "Q" or ev.mode == mode
        ]
        ctx = IntervalContext(
            interval=(1, t),
            base_vertices=set(),
            base_edges=[],
            present_at_start=[],
            events=pass_events,
            endpoints=endpoints,
            lifetimes=lifetimes,
        )
        _solve(ctx, cfg, reduce_graph, sheet, stats, depth=0)
    return sheet
