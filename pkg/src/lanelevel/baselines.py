"""Reference procedures used to check the solvers.

``oracle_best`` is an exhaustive search that works directly on the network's
turn tables, without building a lane-level graph. ``solve_greedy`` is the
usual per-intersection heuristic with a bounded lookahead; it exists to show
where that heuristic goes wrong.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .graph import ArcKind, End
from .model import Convenience, CostTuple, RoadNetwork, ValidatedPath
from .solver import Event, Traversal

_TURN = {
    None: (ArcKind.INFEASIBLE_TURN, (1, 0, 0)),
    Convenience.CONVENIENT: (ArcKind.FEASIBLE_TURN, (0, 0, 0)),
    Convenience.INCONVENIENT: (ArcKind.UNWANTED_TURN, (0, 1, 0)),
}


class SearchSpaceTooLarge(RuntimeError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"oracle would enumerate {size} lane assignments (limit {limit}); use a solver instead")


@dataclass(frozen=True)
class OracleResult:
    best: Traversal
    evaluated: int


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _turn_tables(network: RoadNetwork, path: ValidatedPath):
    segs = path.segments
    return [network.turns_between(a.id, b.id) for a, b in zip(segs, segs[1:])]


def _lane_walk(a: int, b: int) -> list[int]:
    step = 1 if b >= a else -1
    return list(range(a, b + step, step))


def _events_for(p: int, entry: int, exit_: int) -> list[Event]:
    walk = _lane_walk(entry, exit_)
    return [Event(p, ArcKind.LANE_CHANGE, x, y) for x, y in zip(walk, walk[1:])]


def oracle_best(network: RoadNetwork, path: ValidatedPath, max_states: int = 1_000_000) -> OracleResult:
    """Exact optimum by enumerating every exit-lane assignment.

    For a fixed choice of exit lane per segment, the entry lane of each
    segment only interacts with the turn into it and the lane changes inside
    it, so it is minimized per segment by trying every lane. The overall
    result is the same as enumerating every source-to-sink walk of the
    lane-level graph, with the solver's tie-break: smallest reversed sequence
    of ``(lateral, pod, end)`` node keys.
    """
    ks = path.lane_counts
    n = len(ks)
    size = math.prod(ks)
    if size > max_states:
        raise SearchSpaceTooLarge(size, max_states)
    tables = _turn_tables(network, path)

    # best[p][(prev_exit, exit)] -> (cost, reversed node keys of pod p, entry lane)
    best = []
    for p in range(n):
        k = ks[p]
        prev_lanes = range(ks[p - 1]) if p else [None]
        choice = {}
        for prev in prev_lanes:
            for b in range(k):
                winner = None
                for a in range(k):
                    if p:
                        turn = _TURN[tables[p - 1].get((prev, a))][1]
                    else:
                        turn = (0, 0, 0)
                    cost = _add(turn, (0, 0, abs(a - b)))
                    walk = _lane_walk(a, b)
                    keys = ((b, p, End.EXIT),) + tuple((x, p, End.ENTRY) for x in reversed(walk))
                    if winner is None or (cost, keys) < winner[:2]:
                        winner = (cost, keys, a)
                choice[prev, b] = winner
        best.append(choice)

    incumbent = None
    incumbent_keys = None
    evaluated = 0
    for exits in itertools.product(*(range(k) for k in ks)):
        evaluated += 1
        c0 = c1 = c2 = 0
        prev = None
        for p, b in enumerate(exits):
            c = best[p][prev, b][0]
            c0 += c[0]
            c1 += c[1]
            c2 += c[2]
            prev = b
        cost = (c0, c1, c2)
        if incumbent is not None and cost > incumbent[0]:
            continue
        keys = _reversed_keys(best, exits)
        if incumbent is None or cost < incumbent[0] or keys < incumbent_keys:
            incumbent = (cost, exits)
            incumbent_keys = keys

    cost, exits = incumbent
    events: list[Event] = []
    prev = None
    for p, b in enumerate(exits):
        a = best[p][prev, b][2]
        if p:
            kind = _TURN[tables[p - 1].get((prev, a))][0]
            events.append(Event(p - 1, kind, prev, a))
        events.extend(_events_for(p, a, b))
        prev = b
    return OracleResult(Traversal(tuple(exits), CostTuple(*cost), tuple(events)), evaluated)


def _reversed_keys(best, exits) -> tuple:
    keys: tuple = ()
    prev_lanes = (None,) + tuple(exits[:-1])
    for p in range(len(exits) - 1, -1, -1):
        keys += best[p][prev_lanes[p], exits[p]][1]
    return keys


def solve_greedy(network: RoadNetwork, path: ValidatedPath, window: int = 1) -> Traversal:
    """Commit one intersection at a time, looking ``window`` boundaries ahead.

    At each segment the heuristic tries every (exit lane, next entry lane)
    pair and scores it by the cheapest continuation over the next ``window``
    turns, lane changes included. On the first segment the start lane is part
    of that choice. Ties go to the lowest lane indices. Costs are accounted
    honestly, so the result may contain infeasible turns.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    ks = path.lane_counts
    n = len(ks)
    tables = _turn_tables(network, path)

    def turn(q, out_lane, in_lane):
        return _TURN[tables[q].get((out_lane, in_lane))]

    def lookahead(p, entry, horizon):
        # cheapest cost from Entry(p, entry) through boundaries p..horizon-1
        frontier = {entry: (0, 0, 0)}
        for q in range(p, horizon):
            nxt: dict[int, tuple] = {}
            for lane, c in frontier.items():
                for b in range(ks[q]):
                    cb = (c[0], c[1], c[2] + abs(lane - b))
                    for a in range(ks[q + 1]):
                        nc = _add(cb, turn(q, b, a)[1])
                        if a not in nxt or nc < nxt[a]:
                            nxt[a] = nc
            frontier = nxt
        return min(frontier.values())

    lanes: list[int] = []
    events: list[Event] = []
    total = (0, 0, 0)
    entry = 0
    for p in range(n):
        starts = range(ks[0]) if p == 0 else (entry,)
        if p == n - 1:
            start = starts[0]
            lanes.append(start)
            break
        horizon = min(p + window, n - 1)
        pick = None
        for s in starts:
            for b in range(ks[p]):
                for a in range(ks[p + 1]):
                    c = _add((0, 0, abs(s - b)), turn(p, b, a)[1])
                    c = _add(c, lookahead(p + 1, a, horizon))
                    if pick is None or c < pick[0]:
                        pick = (c, s, b, a)
        _, s, b, a = pick
        kind, tc = turn(p, b, a)
        changes = _events_for(p, s, b)
        events.extend(changes)
        events.append(Event(p, kind, b, a))
        total = _add(total, (tc[0], tc[1], tc[2] + len(changes)))
        lanes.append(b)
        entry = a
    return Traversal(tuple(lanes), CostTuple(*total), tuple(events))
