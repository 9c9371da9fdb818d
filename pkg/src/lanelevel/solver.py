"""Lexicographically cheapest source-to-sink traversal of a lane-level graph.

Two interchangeable algorithms share one reconstruction step:

* :func:`solve_dijkstra` runs a label-setting search whose queue starts with
  every source at zero cost and orders entries by the full cost triple.
* :func:`solve_sweep` settles the graph pod by pod in a single forward pass.
  Inside a pod all lane changes cost the same, so the lateral closure is two
  linear relaxation passes instead of a sort.

Ties are resolved identically by both: a node's parent is the cheapest
in-arc, and among equally cheap in-arcs the one whose tail has the smallest
``(lateral_index, pod_index, end)``. The returned sink is the cheapest one,
lowest lateral index first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .graph import Arc, ArcKind, End, LaneLevelGraph, LaneNode, MalformedGraph
from .model import CostTuple

_INF = (float("inf"),) * 3


def tie_key(node: LaneNode) -> tuple[int, int, int]:
    return (node.lateral_index, node.pod_index, int(node.end))


class Event(NamedTuple):
    """A non-body arc used by a traversal.

    For turns ``pod_index`` is the upstream pod (the boundary index) and the
    lanes are exit lane -> entry lane; for lane changes both lanes belong to
    ``pod_index``.
    """

    pod_index: int
    kind: ArcKind
    from_lane: int
    to_lane: int


@dataclass(frozen=True)
class Traversal:
    """Chosen lane per path segment plus the maneuvers used to get there.

    ``lane_sequence[i]`` is the lane in which segment ``i`` is left, i.e. the
    lane the driver has to be in when reaching the end of that segment.
    """

    lane_sequence: tuple[int, ...]
    total_cost: CostTuple
    events: tuple[Event, ...]

    @property
    def feasible(self) -> bool:
        return self.total_cost.infeasible == 0

    @property
    def entry_lanes(self) -> tuple[int, ...]:
        """Lane in which each segment is entered."""
        entry = list(self.lane_sequence)
        changed = set()
        for ev in self.events:
            if ev.kind is not ArcKind.LANE_CHANGE:
                entry[ev.pod_index + 1] = ev.to_lane
            elif ev.pod_index not in changed:
                changed.add(ev.pod_index)
                entry[ev.pod_index] = ev.from_lane
        return tuple(entry)

    def replay_cost(self) -> CostTuple:
        total = CostTuple()
        for ev in self.events:
            total = total + ev.kind.cost
        return total


def _event(arc: Arc) -> Event:
    return Event(arc.tail.pod_index, arc.kind, arc.tail.lateral_index, arc.head.lateral_index)


def reconstruct(llg: LaneLevelGraph, cost: Sequence, parent: Sequence[Optional[Arc]]) -> Traversal:
    """Pick the best sink and walk parent arcs back to a source.

    ``cost`` and ``parent`` are indexed by node id.
    """
    last = llg.pods[-1]
    best_id = None
    for lane in range(last.lane_count):
        nid = last.exit_id(lane)
        if cost[nid] is None:
            raise MalformedGraph(f"sink {llg.nodes[nid]} was never reached")
        if best_id is None or cost[nid] < cost[best_id]:
            best_id = nid

    used: list[Arc] = []
    nid = best_id
    for _ in range(llg.node_count + 1):
        arc = parent[nid]
        if arc is None:
            break
        if arc.head_id != nid:
            raise MalformedGraph(f"parent arc of {llg.nodes[nid]} does not end there")
        used.append(arc)
        nid = arc.tail_id
    else:
        raise MalformedGraph("parent chain does not terminate")
    start = llg.nodes[nid]
    if start.pod_index != 0 or start.end is not End.ENTRY:
        raise MalformedGraph(f"parent chain ends at {start}, not at a source")
    used.reverse()

    lanes = [None] * len(llg.pods)
    events = []
    for arc in used:
        if arc.kind is ArcKind.LANE_BODY:
            lanes[arc.tail.pod_index] = arc.tail.lateral_index
        else:
            events.append(_event(arc))
    if any(lane is None for lane in lanes):
        raise MalformedGraph("traversal skips a pod")

    total = CostTuple(*cost[best_id])
    trav = Traversal(tuple(lanes), total, tuple(events))
    if trav.replay_cost() != total:
        raise MalformedGraph("arc costs along the parent chain do not sum to the sink label")
    return trav


def dijkstra_labels(llg: LaneLevelGraph) -> tuple[list, list[Optional[Arc]]]:
    """Settled cost and parent arc per node id, by label-setting search."""
    n = llg.node_count
    nodes = llg.nodes
    cost: list = [None] * n
    parent: list[Optional[Arc]] = [None] * n
    settled = bytearray(n)
    heap = []
    for src in llg.sources:
        nid = llg.node_id(src)
        cost[nid] = (0, 0, 0)
        heap.append(((0, 0, 0), nid))
    heapq.heapify(heap)

    while heap:
        d, u = heapq.heappop(heap)
        if settled[u]:
            continue
        settled[u] = 1
        for arc in llg.out_arcs(u):
            c = arc.cost
            nc = (d[0] + c[0], d[1] + c[1], d[2] + c[2])
            v = arc.head_id
            cur = cost[v]
            if cur is None or nc < cur:
                cost[v] = nc
                parent[v] = arc
                heapq.heappush(heap, (nc, v))
            elif nc == cur and parent[v] is not None and tie_key(nodes[u]) < tie_key(parent[v].tail):
                # equal-cost alternative; the label itself is unchanged
                parent[v] = arc
    return cost, parent


def solve_dijkstra(llg: LaneLevelGraph) -> Traversal:
    return reconstruct(llg, *dijkstra_labels(llg))


def sweep_labels(llg: LaneLevelGraph) -> tuple[list, list[Optional[Arc]]]:
    """Settled cost and parent arc per node id, by one forward pass over pods."""
    n = llg.node_count
    cost: list = [None] * n
    parent: list[Optional[Arc]] = [None] * n

    for pod in llg.pods:
        k = pod.lane_count
        body: list[Optional[Arc]] = [None] * k
        from_left: list[Optional[Arc]] = [None] * k
        from_right: list[Optional[Arc]] = [None] * k
        for arc in llg.pod_arcs[pod.index]:
            lane = arc.head.lateral_index
            if arc.kind is ArcKind.LANE_BODY:
                body[lane] = arc
            elif arc.tail.lateral_index < lane:
                from_left[lane] = arc
            else:
                from_right[lane] = arc

        if pod.index == 0:
            entry = [(0, 0, 0)] * k
            via: list[Optional[Arc]] = [None] * k
        else:
            entry = [_INF] * k
            via = [None] * k
            for arc in llg.turn_arcs[pod.index - 1]:
                d = cost[arc.tail_id]
                c = arc.cost
                nc = (d[0] + c[0], d[1] + c[1], d[2] + c[2])
                j = arc.head.lateral_index
                cur = entry[j]
                if nc < cur or (nc == cur and tie_key(arc.tail) < tie_key(via[j].tail)):
                    entry[j] = nc
                    via[j] = arc
            if _INF in entry:
                raise MalformedGraph(f"pod {pod.index} has an entry lane without incoming turn arcs")

        settled = list(entry)
        for j in range(1, k):
            d = settled[j - 1]
            cand = (d[0], d[1], d[2] + 1)
            if cand < settled[j]:
                settled[j] = cand
        for j in range(k - 2, -1, -1):
            d = settled[j + 1]
            cand = (d[0], d[1], d[2] + 1)
            if cand < settled[j]:
                settled[j] = cand

        for j in range(k):
            best = settled[j]
            options = []
            if via[j] is not None and entry[j] == best:
                options.append(via[j])
            if j > 0 and (settled[j - 1][0], settled[j - 1][1], settled[j - 1][2] + 1) == best:
                options.append(from_left[j])
            if j < k - 1 and (settled[j + 1][0], settled[j + 1][1], settled[j + 1][2] + 1) == best:
                options.append(from_right[j])
            entry_id, exit_id = pod.entry_id(j), pod.exit_id(j)
            cost[entry_id] = best
            parent[entry_id] = min(options, key=lambda a: tie_key(a.tail)) if options else None
            cost[exit_id] = best
            parent[exit_id] = body[j]

    return cost, parent


def solve_sweep(llg: LaneLevelGraph) -> Traversal:
    return reconstruct(llg, *sweep_labels(llg))


SOLVERS = {"sweep": solve_sweep, "dijkstra": solve_dijkstra}


def solve(llg: LaneLevelGraph, algorithm: str = "sweep") -> Traversal:
    try:
        fn = SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {sorted(SOLVERS)}") from None
    return fn(llg)
