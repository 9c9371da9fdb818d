"""Road network data model, input paths, the cost algebra and validation.

A network is a set of intersections joined by directed segments. Every
segment carries an ordered list of lanes, and lane-to-lane turn connections
state which lanes of one segment may be entered from which lanes of the
next. A missing connection record means that lane-level turn is forbidden.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Any, Hashable, Iterable, Mapping, NamedTuple, Sequence

#: Widest known road; lane counts above this are suspicious map data.
MAX_PLAUSIBLE_LANES = 26

COST_COMPONENT_MAX = 2**64 - 1


class _CostFields(NamedTuple):
    infeasible: int
    unwanted: int
    lane_changes: int


class CostTuple(_CostFields):
    """Maneuver counts ``(infeasible, unwanted, lane_changes)``.

    Ordering is plain tuple ordering, i.e. lexicographic with the infeasible
    count most significant. ``+`` is component-wise.
    """

    __slots__ = ()

    def __new__(cls, infeasible: int = 0, unwanted: int = 0, lane_changes: int = 0):
        for value in (infeasible, unwanted, lane_changes):
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"cost components must be integers, got {value!r}")
            if value < 0 or value > COST_COMPONENT_MAX:
                raise OverflowError(f"cost component {value} outside unsigned 64-bit range")
        return super().__new__(cls, infeasible, unwanted, lane_changes)

    def __add__(self, other):  # type: ignore[override]
        if not isinstance(other, tuple) or len(other) != 3:
            return NotImplemented
        return cost_add(self, other)

    __radd__ = __add__

    def __repr__(self) -> str:
        return f"CostTuple{tuple(self)}"


ZERO_COST = CostTuple(0, 0, 0)


def cost_add(a: Sequence[int], b: Sequence[int]) -> CostTuple:
    """Component-wise sum. Raises ``OverflowError`` past 64 bits."""
    return CostTuple(a[0] + b[0], a[1] + b[1], a[2] + b[2])


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def cost_compare(a: Sequence[int], b: Sequence[int]) -> Ordering:
    ta, tb = tuple(a), tuple(b)
    if ta < tb:
        return Ordering.LESS
    if ta > tb:
        return Ordering.GREATER
    return Ordering.EQUAL


class Convenience(str, enum.Enum):
    CONVENIENT = "convenient"
    INCONVENIENT = "inconvenient"


def _frozen_map(value: Mapping[str, Any] | None) -> Mapping[str, Any]:
    return MappingProxyType(dict(value or {}))


@dataclass(frozen=True)
class Lane:
    lateral_index: int
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "metadata", _frozen_map(self.metadata))


@dataclass(frozen=True)
class Segment:
    id: Hashable
    source: Hashable
    target: Hashable
    lanes: tuple[Lane, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False)
    length: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "lanes", tuple(self.lanes))
        object.__setattr__(self, "metadata", _frozen_map(self.metadata))

    @classmethod
    def with_lanes(cls, id, source, target, lane_count: int, **kwargs) -> "Segment":
        """Build a segment whose lanes carry lateral indices ``0..lane_count-1``."""
        return cls(id, source, target, tuple(Lane(i) for i in range(lane_count)), **kwargs)

    @property
    def lane_count(self) -> int:
        return len(self.lanes)


@dataclass(frozen=True)
class TurnConnection:
    from_segment: Hashable
    from_lane: int
    to_segment: Hashable
    to_lane: int
    convenience: Convenience = Convenience.CONVENIENT

    def __post_init__(self):
        object.__setattr__(self, "convenience", Convenience(self.convenience))

    @property
    def key(self) -> tuple:
        return (self.from_segment, self.from_lane, self.to_segment, self.to_lane)


@dataclass(frozen=True)
class RoadNetwork:
    """Immutable lane-annotated road network.

    Construction never raises on malformed content; call
    :func:`validate_network` to get the list of problems.
    """

    intersections: frozenset
    segments: tuple[Segment, ...]
    connections: tuple[TurnConnection, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intersections", frozenset(self.intersections))
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "connections", tuple(self.connections))

    @cached_property
    def segment_index(self) -> Mapping[Hashable, Segment]:
        # first occurrence wins; duplicates are reported by validate_network
        index: dict[Hashable, Segment] = {}
        for seg in self.segments:
            index.setdefault(seg.id, seg)
        return MappingProxyType(index)

    @cached_property
    def _turns(self) -> Mapping[tuple, Mapping[tuple[int, int], Convenience]]:
        table: dict[tuple, dict[tuple[int, int], Convenience]] = {}
        for c in self.connections:
            table.setdefault((c.from_segment, c.to_segment), {}).setdefault(
                (c.from_lane, c.to_lane), c.convenience
            )
        return MappingProxyType({k: MappingProxyType(v) for k, v in table.items()})

    def turns_between(self, from_segment: Hashable, to_segment: Hashable) -> Mapping[tuple[int, int], Convenience]:
        """Declared lane pairs ``(from_lane, to_lane) -> convenience`` for one segment pair."""
        return self._turns.get((from_segment, to_segment), MappingProxyType({}))

    def segment(self, segment_id: Hashable) -> Segment:
        return self.segment_index[segment_id]


# --- validation -------------------------------------------------------------


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Issue:
    severity: Severity
    code: str
    message: str

    def as_dict(self) -> dict[str, str]:
        return {"severity": self.severity.value, "code": self.code, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.ERROR]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.WARNING]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return bool(self.issues)

    def __len__(self) -> int:
        return len(self.issues)

    def __iter__(self):
        return iter(self.issues)


class ValidationFailed(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        lines = "; ".join(i.message for i in report.errors) or "invalid input"
        super().__init__(lines)


def validate_network(network: RoadNetwork) -> ValidationReport:
    issues: list[Issue] = []

    def error(code, message):
        issues.append(Issue(Severity.ERROR, code, message))

    seen: dict[Hashable, Segment] = {}
    for seg in network.segments:
        if seg.id in seen:
            error("duplicate-segment", f"duplicate segment id {seg.id!r}")
            continue
        seen[seg.id] = seg
        for end in ("source", "target"):
            node = getattr(seg, end)
            if node not in network.intersections:
                error("unknown-intersection", f"segment {seg.id!r}: {end} intersection {node!r} does not exist")
        if not seg.lanes:
            error("no-lanes", f"segment {seg.id!r} has no lanes")
        for pos, lane in enumerate(seg.lanes):
            if lane.lateral_index != pos:
                error(
                    "lateral-index",
                    f"segment {seg.id!r}: lane at position {pos} has lateral index {lane.lateral_index}",
                )
        if seg.lane_count > MAX_PLAUSIBLE_LANES:
            issues.append(
                Issue(
                    Severity.WARNING,
                    "lane-count",
                    f"segment {seg.id!r}: lane count exceeds {MAX_PLAUSIBLE_LANES} ({seg.lane_count})",
                )
            )
        if seg.length is not None and (not isinstance(seg.length, int) or seg.length < 0):
            error("length", f"segment {seg.id!r}: length must be a non-negative integer")

    declared: set[tuple] = set()
    for c in network.connections:
        label = f"connection {c.from_segment!r}[{c.from_lane}] -> {c.to_segment!r}[{c.to_lane}]"
        src, dst = seen.get(c.from_segment), seen.get(c.to_segment)
        if src is None or dst is None:
            missing = c.from_segment if src is None else c.to_segment
            error("unknown-segment", f"{label}: unknown segment {missing!r}")
            continue
        if src.target != dst.source:
            error("no-shared-intersection", f"{label}: segments share no intersection")
        for lane, seg in ((c.from_lane, src), (c.to_lane, dst)):
            if not isinstance(lane, int) or not 0 <= lane < seg.lane_count:
                error("lane-bounds", f"{label}: lane index out of bounds for segment {seg.id!r}")
        if c.key in declared:
            error("duplicate-connection", f"{label}: duplicate connection")
        declared.add(c.key)

    return ValidationReport(tuple(issues))


# --- paths ------------------------------------------------------------------


class PathError(ValueError):
    pass


class UnknownSegment(PathError):
    def __init__(self, segment_id: Hashable):
        self.segment_id = segment_id
        super().__init__(f"unknown segment {segment_id!r}")


class DisconnectedAt(PathError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"segments at positions {position} and {position + 1} share no intersection")


@dataclass(frozen=True)
class Path:
    segment_ids: tuple

    def __post_init__(self):
        object.__setattr__(self, "segment_ids", tuple(self.segment_ids))

    def __len__(self) -> int:
        return len(self.segment_ids)

    def __iter__(self):
        return iter(self.segment_ids)


@dataclass(frozen=True)
class ValidatedPath:
    """A path whose segment ids are resolved against one network."""

    path: Path
    segments: tuple[Segment, ...]

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def lane_counts(self) -> tuple[int, ...]:
        return tuple(s.lane_count for s in self.segments)


def validate_path(network: RoadNetwork, path: Path | Iterable[Hashable]) -> ValidatedPath:
    if not isinstance(path, Path):
        path = Path(tuple(path))
    if not path.segment_ids:
        raise PathError("path must contain at least one segment")
    index = network.segment_index
    resolved = []
    for sid in path.segment_ids:
        try:
            resolved.append(index[sid])
        except (KeyError, TypeError):
            raise UnknownSegment(sid) from None
    for i in range(len(resolved) - 1):
        if resolved[i].target != resolved[i + 1].source:
            raise DisconnectedAt(i)
    return ValidatedPath(path, tuple(resolved))
