"""Lane-level graph construction along a validated path.

Every segment of the path becomes a *pod*. Each lane of the segment
contributes an Entry and an Exit node joined by a zero-cost lane body arc.
Adjacent lanes are linked at their Entry nodes by lane-change arcs in both
directions. Between consecutive pods, every (exit lane, entry lane) pair gets
exactly one turn arc: feasible or unwanted if the network declares the
connection, infeasible otherwise. The infeasible fill-in keeps every sink
reachable from every source, so a traversal always exists.

Nodes are numbered densely. Pod ``i`` occupies ids
``offset[i] .. offset[i] + 2*k_i - 1``: Entry nodes first, then Exit nodes,
each block ordered by lateral index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Hashable, Iterator, NamedTuple

from .model import Convenience, CostTuple, Path, RoadNetwork, ValidatedPath


class End(enum.IntEnum):
    ENTRY = 0
    EXIT = 1


class LaneNode(NamedTuple):
    pod_index: int
    lateral_index: int
    end: End


class ArcKind(str, enum.Enum):
    LANE_BODY = "lane_body"
    FEASIBLE_TURN = "feasible_turn"
    UNWANTED_TURN = "unwanted_turn"
    INFEASIBLE_TURN = "infeasible_turn"
    LANE_CHANGE = "lane_change"

    @property
    def cost(self) -> CostTuple:
        return ARC_COSTS[self]

    @property
    def is_turn(self) -> bool:
        return self in TURN_KINDS


ARC_COSTS = {
    ArcKind.LANE_BODY: CostTuple(0, 0, 0),
    ArcKind.FEASIBLE_TURN: CostTuple(0, 0, 0),
    ArcKind.UNWANTED_TURN: CostTuple(0, 1, 0),
    ArcKind.INFEASIBLE_TURN: CostTuple(1, 0, 0),
    ArcKind.LANE_CHANGE: CostTuple(0, 0, 1),
}
TURN_KINDS = frozenset({ArcKind.FEASIBLE_TURN, ArcKind.UNWANTED_TURN, ArcKind.INFEASIBLE_TURN})

_TURN_KIND = {
    Convenience.CONVENIENT: ArcKind.FEASIBLE_TURN,
    Convenience.INCONVENIENT: ArcKind.UNWANTED_TURN,
}


class Arc(NamedTuple):
    tail: LaneNode
    head: LaneNode
    kind: ArcKind
    cost: CostTuple
    tail_id: int
    head_id: int


@dataclass(frozen=True)
class Pod:
    index: int
    segment_id: Hashable
    lane_count: int
    offset: int

    def entry_id(self, lane: int) -> int:
        return self.offset + lane

    def exit_id(self, lane: int) -> int:
        return self.offset + self.lane_count + lane

    @property
    def node_range(self) -> range:
        return range(self.offset, self.offset + 2 * self.lane_count)


class MalformedGraph(RuntimeError):
    pass


class LaneLevelGraph:
    """Forward-staged lane-level graph over one path.

    ``pod_arcs[i]`` holds the lane body and lane-change arcs of pod ``i``;
    ``turn_arcs[i]`` holds the turn arcs from pod ``i`` to pod ``i + 1``.
    """

    def __init__(self, pods, pod_arcs, turn_arcs):
        self.pods: tuple[Pod, ...] = tuple(pods)
        self.pod_arcs: tuple[tuple[Arc, ...], ...] = tuple(tuple(a) for a in pod_arcs)
        self.turn_arcs: tuple[tuple[Arc, ...], ...] = tuple(tuple(a) for a in turn_arcs)
        self.node_count = sum(2 * p.lane_count for p in self.pods)
        nodes = []
        for p in self.pods:
            for end in End:
                nodes.extend(LaneNode(p.index, lane, end) for lane in range(p.lane_count))
        self.nodes: tuple[LaneNode, ...] = tuple(nodes)
        self._out = None

    def __len__(self) -> int:
        return len(self.pods)

    def __repr__(self) -> str:
        return f"<LaneLevelGraph pods={len(self.pods)} nodes={self.node_count} arcs={self.arc_count}>"

    @property
    def arc_count(self) -> int:
        return sum(map(len, self.pod_arcs)) + sum(map(len, self.turn_arcs))

    def node_id(self, node: LaneNode) -> int:
        pod = self.pods[node.pod_index]
        if not 0 <= node.lateral_index < pod.lane_count:
            raise KeyError(node)
        return pod.offset + node.end * pod.lane_count + node.lateral_index

    @property
    def sources(self) -> list[LaneNode]:
        return [LaneNode(0, lane, End.ENTRY) for lane in range(self.pods[0].lane_count)]

    @property
    def sinks(self) -> list[LaneNode]:
        last = self.pods[-1]
        return [LaneNode(last.index, lane, End.EXIT) for lane in range(last.lane_count)]

    def arcs(self) -> Iterator[Arc]:
        for i, pod_arcs in enumerate(self.pod_arcs):
            yield from pod_arcs
            if i < len(self.turn_arcs):
                yield from self.turn_arcs[i]

    def out_arcs(self, node_id: int) -> list[Arc]:
        if self._out is None:
            out: list[list[Arc]] = [[] for _ in range(self.node_count)]
            for arc in self.arcs():
                out[arc.tail_id].append(arc)
            self._out = out
        return self._out[node_id]

    def boundary_arc_count(self, boundary: int) -> int:
        """Turn arcs of one boundary plus the lane changes of the downstream pod."""
        changes = sum(1 for a in self.pod_arcs[boundary + 1] if a.kind is ArcKind.LANE_CHANGE)
        return len(self.turn_arcs[boundary]) + changes

    def kind_counts(self) -> dict[ArcKind, int]:
        counts = dict.fromkeys(ArcKind, 0)
        for arc in self.arcs():
            counts[arc.kind] += 1
        return counts


def pod_arc_bound(k_out: int, k_in: int) -> int:
    """Largest possible arc count at one pod boundary.

    Full bipartite turn set plus both directions of every lateral lane change;
    reduces to ``k*k + 2*(k - 1)`` for equal lane counts.
    """
    if k_out < 1 or k_in < 1:
        raise ValueError("lane counts must be at least 1")
    return k_out * k_in + 2 * (max(k_out, k_in) - 1)


def build_llg(network: RoadNetwork, path: ValidatedPath) -> LaneLevelGraph:
    pods: list[Pod] = []
    offset = 0
    for i, seg in enumerate(path.segments):
        pods.append(Pod(i, seg.id, seg.lane_count, offset))
        offset += 2 * seg.lane_count

    body_cost = ARC_COSTS[ArcKind.LANE_BODY]
    change_cost = ARC_COSTS[ArcKind.LANE_CHANGE]
    pod_arcs = []
    for pod in pods:
        i, k = pod.index, pod.lane_count
        entries = [LaneNode(i, lane, End.ENTRY) for lane in range(k)]
        exits = [LaneNode(i, lane, End.EXIT) for lane in range(k)]
        arcs = [
            Arc(entries[lane], exits[lane], ArcKind.LANE_BODY, body_cost, pod.entry_id(lane), pod.exit_id(lane))
            for lane in range(k)
        ]
        for lane in range(k - 1):
            left, right = pod.entry_id(lane), pod.entry_id(lane + 1)
            arcs.append(Arc(entries[lane], entries[lane + 1], ArcKind.LANE_CHANGE, change_cost, left, right))
            arcs.append(Arc(entries[lane + 1], entries[lane], ArcKind.LANE_CHANGE, change_cost, right, left))
        pod_arcs.append(arcs)

    turn_arcs = []
    for up, down in zip(pods, pods[1:]):
        declared = network.turns_between(up.segment_id, down.segment_id)
        arcs = []
        for out_lane in range(up.lane_count):
            tail = LaneNode(up.index, out_lane, End.EXIT)
            tail_id = up.exit_id(out_lane)
            for in_lane in range(down.lane_count):
                convenience = declared.get((out_lane, in_lane))
                kind = ArcKind.INFEASIBLE_TURN if convenience is None else _TURN_KIND[convenience]
                head = LaneNode(down.index, in_lane, End.ENTRY)
                arcs.append(Arc(tail, head, kind, ARC_COSTS[kind], tail_id, down.entry_id(in_lane)))
        turn_arcs.append(arcs)

    return LaneLevelGraph(pods, pod_arcs, turn_arcs)


def collapse(llg: LaneLevelGraph) -> Path:
    """Contract each pod to one vertex and drop duplicate arcs; returns the path."""
    if not llg.pods:
        raise MalformedGraph("graph has no pods")
    if len(llg.turn_arcs) != len(llg.pods) - 1:
        raise MalformedGraph("turn arc groups do not match pod boundaries")
    for i, pod in enumerate(llg.pods):
        if pod.index != i:
            raise MalformedGraph(f"pod at position {i} carries index {pod.index}")
    contracted: set[tuple[int, int]] = set()
    for arc in llg.arcs():
        a, b = arc.tail.pod_index, arc.head.pod_index
        if b not in (a, a + 1):
            raise MalformedGraph(f"arc {arc.tail} -> {arc.head} is not forward-staged")
        if a != b:
            contracted.add((a, b))
    expected = {(i, i + 1) for i in range(len(llg.pods) - 1)}
    if contracted != expected:
        raise MalformedGraph("contracted pods do not form a simple chain")
    return Path(tuple(p.segment_id for p in llg.pods))
