"""Driver-facing lane guidance derived from a traversal.

Decision points are kept to a minimum. A ``UseLane`` instruction is issued
at the start of the route, wherever the set of lanes that still allow an
optimal continuation is narrower than the segment itself, and wherever a
turn lands in a lane whose number differs from the one the driver was in.
Every lane change and every infeasible turn is reported as well.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .graph import ArcKind
from .model import Convenience, RoadNetwork, ValidatedPath
from .solver import Traversal

_TURN_COST = {None: (1, 0, 0), Convenience.CONVENIENT: (0, 0, 0), Convenience.INCONVENIENT: (0, 1, 0)}


class InstructionKind(str, enum.Enum):
    CHANGE_LANE = "change_lane"
    USE_LANE = "use_lane"
    INFEASIBLE_WARNING = "infeasible_warning"


_RANK = {InstructionKind.CHANGE_LANE: 0, InstructionKind.USE_LANE: 1, InstructionKind.INFEASIBLE_WARNING: 2}


@dataclass(frozen=True)
class Instruction:
    kind: InstructionKind
    pod_index: int
    detail: tuple[int, ...]

    @classmethod
    def use_lane(cls, pod_index: int, lane: int) -> "Instruction":
        return cls(InstructionKind.USE_LANE, pod_index, (lane,))

    @classmethod
    def change_lane(cls, pod_index: int, from_lane: int, to_lane: int) -> "Instruction":
        return cls(InstructionKind.CHANGE_LANE, pod_index, (from_lane, to_lane))

    @classmethod
    def infeasible_warning(cls, boundary: int) -> "Instruction":
        return cls(InstructionKind.INFEASIBLE_WARNING, boundary, (boundary,))


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _lateral_min(values):
    # min over j of values[j] + (0, 0, |i - j|), for every i
    out = list(values)
    for i in range(1, len(out)):
        cand = (out[i - 1][0], out[i - 1][1], out[i - 1][2] + 1)
        if cand < out[i]:
            out[i] = cand
    for i in range(len(out) - 2, -1, -1):
        cand = (out[i + 1][0], out[i + 1][1], out[i + 1][2] + 1)
        if cand < out[i]:
            out[i] = cand
    return out


def usable_lanes(network: RoadNetwork, path: ValidatedPath) -> list[frozenset[int]]:
    """Per segment, the exit lanes that lie on at least one optimal traversal."""
    segs = path.segments
    ks = path.lane_counts
    n = len(segs)
    tables = [network.turns_between(a.id, b.id) for a, b in zip(segs, segs[1:])]

    forward = [[(0, 0, 0)] * ks[0]]
    for p in range(1, n):
        prev = forward[-1]
        entry = [
            min(_add(prev[b], _TURN_COST[tables[p - 1].get((b, a))]) for b in range(ks[p - 1]))
            for a in range(ks[p])
        ]
        forward.append(_lateral_min(entry))

    backward = [None] * n
    backward[n - 1] = [(0, 0, 0)] * ks[n - 1]
    for p in range(n - 2, -1, -1):
        after_entry = _lateral_min(backward[p + 1])
        backward[p] = [
            min(_add(_TURN_COST[tables[p].get((b, a))], after_entry[a]) for a in range(ks[p + 1]))
            for b in range(ks[p])
        ]

    optimum = min(forward[-1])
    return [
        frozenset(b for b in range(ks[p]) if _add(forward[p][b], backward[p][b]) == optimum)
        for p in range(n)
    ]


def emit_instructions(traversal: Traversal, network: RoadNetwork, path: ValidatedPath) -> list[Instruction]:
    n = len(path)
    if len(traversal.lane_sequence) != n:
        raise ValueError(f"traversal covers {len(traversal.lane_sequence)} segments, path has {n}")
    ks = path.lane_counts
    lanes = traversal.lane_sequence
    entries = traversal.entry_lanes
    usable = usable_lanes(network, path)

    out: list[Instruction] = []
    changed_pods = set()
    for ev in traversal.events:
        if ev.kind is ArcKind.LANE_CHANGE:
            changed_pods.add(ev.pod_index)
            out.append(Instruction.change_lane(ev.pod_index, ev.from_lane, ev.to_lane))
        elif ev.kind is ArcKind.INFEASIBLE_TURN:
            out.append(Instruction.infeasible_warning(ev.pod_index))

    for p in range(n):
        narrowed = len(usable[p]) < ks[p]
        shifted = p > 0 and ks[p] > 1 and p not in changed_pods and entries[p] != lanes[p - 1]
        if p == 0 or narrowed or shifted:
            out.append(Instruction.use_lane(p, lanes[p]))

    out.sort(key=lambda ins: (ins.pod_index, _RANK[ins.kind]))
    return out


def replay(instructions: Sequence[Instruction], lane_counts: Sequence[int]) -> list[int]:
    """Lane per segment obtained by following the instructions.

    Without an instruction the driver keeps the lane number, or takes the
    only lane of a single-lane segment.
    """
    by_pod: dict[int, list[Instruction]] = {}
    for ins in instructions:
        by_pod.setdefault(ins.pod_index, []).append(ins)
    lane = None
    lanes = []
    for p, k in enumerate(lane_counts):
        here = by_pod.get(p, [])
        changes = [i for i in here if i.kind is InstructionKind.CHANGE_LANE]
        uses = [i for i in here if i.kind is InstructionKind.USE_LANE]
        if changes:
            lane = changes[0].detail[0]
            for ins in changes:
                if ins.detail[0] != lane:
                    raise ValueError(f"lane change at segment {p} does not start from lane {lane}")
                lane = ins.detail[1]
        elif uses:
            lane = uses[0].detail[0]
        elif k == 1:
            lane = 0
        if uses and uses[0].detail[0] != lane:
            raise ValueError(f"segment {p}: instructed lane {uses[0].detail[0]} but driver is in lane {lane}")
        if lane is None or not 0 <= lane < k:
            raise ValueError(f"segment {p}: no valid lane to continue in")
        lanes.append(lane)
    return lanes
