"""Synthetic instances: seeded random chains and the lane dependency family.

Random draws come from MT19937 seeded through ``init_by_array`` with the
seed split into little-endian 32-bit words, which is exactly what
:class:`random.Random` does for a non-negative integer seed. Only two
primitives are used, so other implementations can reproduce a corpus:

* ``genrand_int32`` (``Random.getrandbits(32)``) for lane counts:
  ``1 + u32 % max_lanes``;
* ``genrand_res53`` (``Random.random()``) for Bernoulli draws: ``u < p``.

Draw order: one lane count per segment, then for each boundary, each
upstream lane, each downstream lane: one connection draw, followed by one
convenience draw only if the connection was declared.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Convenience, Path, RoadNetwork, Segment, TurnConnection


@dataclass(frozen=True)
class GenSpec:
    segments: int
    max_lanes: int
    connection_density: float = 0.5
    inconvenient_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.segments < 1:
            raise ValueError("segments must be >= 1")
        if self.max_lanes < 1:
            raise ValueError("max_lanes must be >= 1")
        for name in ("connection_density", "inconvenient_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _chain(lane_counts, connections) -> tuple[RoadNetwork, Path]:
    n = len(lane_counts)
    segments = [Segment.with_lanes(f"e{i}", f"v{i}", f"v{i + 1}", k) for i, k in enumerate(lane_counts)]
    network = RoadNetwork(frozenset(f"v{i}" for i in range(n + 1)), tuple(segments), tuple(connections))
    return network, Path(tuple(s.id for s in segments))


def gen_random(spec: GenSpec) -> tuple[RoadNetwork, Path]:
    rng = random.Random(spec.seed)
    lanes = [1 + rng.getrandbits(32) % spec.max_lanes for _ in range(spec.segments)]
    connections = []
    for i in range(spec.segments - 1):
        for out_lane in range(lanes[i]):
            for in_lane in range(lanes[i + 1]):
                if rng.random() < spec.connection_density:
                    inconvenient = rng.random() < spec.inconvenient_fraction
                    connections.append(
                        TurnConnection(
                            f"e{i}",
                            out_lane,
                            f"e{i + 1}",
                            in_lane,
                            Convenience.INCONVENIENT if inconvenient else Convenience.CONVENIENT,
                        )
                    )
    return _chain(lanes, connections)


def gen_dependency_chain(length: int) -> tuple[RoadNetwork, Path]:
    """Two-lane chain where only lane 1 continues at the last boundary.

    Earlier boundaries connect lanes straight through, so the right lane has
    to be chosen at the very start to finish without any maneuver.
    """
    if length < 2:
        raise ValueError("dependency chain needs at least two segments")
    connections = []
    for i in range(length - 2):
        for lane in (0, 1):
            connections.append(TurnConnection(f"e{i}", lane, f"e{i + 1}", lane))
    connections.append(TurnConnection(f"e{length - 2}", 1, f"e{length - 1}", 1))
    return _chain([2] * length, connections)


def gen_uniform_chain(length: int, lanes: int = 2) -> tuple[RoadNetwork, Path]:
    """Chain of equal-width segments, every lane pair conveniently connected."""
    if length < 1 or lanes < 1:
        raise ValueError("length and lanes must be >= 1")
    connections = [
        TurnConnection(f"e{i}", a, f"e{i + 1}", b)
        for i in range(length - 1)
        for a in range(lanes)
        for b in range(lanes)
    ]
    return _chain([lanes] * length, connections)


def two_intersection_example() -> tuple[RoadNetwork, Path]:
    """Three segments through intersections A and B.

    The approach to A has two lanes feeding the two lanes between A and B
    straight across. At B only the left lane (index 1) turns onto the single
    lane exit, so the lane choice at A decides whether B can be made.
    """
    segments = (
        Segment.with_lanes("approach", "S", "A", 2),
        Segment.with_lanes("middle", "A", "B", 2),
        Segment.with_lanes("exit", "B", "N", 1),
    )
    connections = (
        TurnConnection("approach", 0, "middle", 0),
        TurnConnection("approach", 1, "middle", 1),
        TurnConnection("middle", 1, "exit", 0),
    )
    network = RoadNetwork(frozenset({"S", "A", "B", "N"}), segments, connections)
    return network, Path(("approach", "middle", "exit"))
