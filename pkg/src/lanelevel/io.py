"""JSON interchange formats and DOT export.

All documents are UTF-8 JSON objects with ``"format_version": 1`` and are
written canonically (sorted keys, two-space indent, trailing newline) so
equal content always yields equal bytes.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any, Iterable, Optional

from .graph import ArcKind, End, LaneLevelGraph
from .guidance import Instruction, InstructionKind
from .model import (
    Convenience,
    CostTuple,
    Issue,
    Lane,
    Path,
    RoadNetwork,
    Segment,
    Severity,
    TurnConnection,
    ValidationFailed,
    ValidationReport,
    validate_network,
)
from .solver import Event, Traversal

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


def dumps(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _parse(text: str | bytes) -> dict:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    return doc


def _require(obj: Any, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


_ID = (str, int)


# --- networks ---------------------------------------------------------------


def network_to_dict(network: RoadNetwork) -> dict:
    segments = []
    for seg in network.segments:
        entry: dict[str, Any] = {
            "id": seg.id,
            "source": seg.source,
            "target": seg.target,
            "lanes": seg.lane_count,
            "metadata": dict(seg.metadata),
        }
        if any(lane.metadata for lane in seg.lanes):
            entry["lane_metadata"] = [dict(lane.metadata) for lane in seg.lanes]
        if seg.length is not None:
            entry["length"] = seg.length
        segments.append(entry)
    return {
        "format_version": FORMAT_VERSION,
        "network": {
            "intersections": sorted(network.intersections, key=lambda v: (isinstance(v, str), v)),
            "segments": segments,
            "connections": [
                {
                    "from_segment": c.from_segment,
                    "from_lane": c.from_lane,
                    "to_segment": c.to_segment,
                    "to_lane": c.to_lane,
                    "convenience": c.convenience.value,
                }
                for c in network.connections
            ],
        },
    }


def network_from_dict(doc: dict, validate: bool = True) -> RoadNetwork:
    body = _require(doc, "network", dict, "document")
    intersections = _require(body, "intersections", list, "network")
    for v in intersections:
        if not isinstance(v, _ID) or isinstance(v, bool):
            raise ParseError("network.intersections: identifiers must be strings or integers")
    segments = []
    for i, raw in enumerate(_require(body, "segments", list, "network")):
        where = f"network.segments[{i}]"
        count = _require(raw, "lanes", int, where)
        if count < 0:
            raise ParseError(f"{where}.lanes: must be non-negative")
        lane_meta = raw.get("lane_metadata")
        if lane_meta is not None and (not isinstance(lane_meta, list) or len(lane_meta) != count):
            raise ParseError(f"{where}.lane_metadata: must be a list with one entry per lane")
        lanes = tuple(Lane(j, (lane_meta[j] if lane_meta else {})) for j in range(count))
        segments.append(
            Segment(
                _require(raw, "id", _ID, where),
                _require(raw, "source", _ID, where),
                _require(raw, "target", _ID, where),
                lanes,
                metadata=raw.get("metadata") or {},
                length=raw.get("length"),
            )
        )
    connections = []
    for i, raw in enumerate(body.get("connections", [])):
        where = f"network.connections[{i}]"
        try:
            convenience = Convenience(raw.get("convenience", "convenient"))
        except ValueError:
            raise ParseError(f"{where}.convenience: expected 'convenient' or 'inconvenient'") from None
        connections.append(
            TurnConnection(
                _require(raw, "from_segment", _ID, where),
                _require(raw, "from_lane", int, where),
                _require(raw, "to_segment", _ID, where),
                _require(raw, "to_lane", int, where),
                convenience,
            )
        )
    network = RoadNetwork(frozenset(intersections), tuple(segments), tuple(connections))
    if validate:
        report = validate_network(network)
        if not report.ok:
            raise ValidationFailed(report)
    return network


def loads_network(text: str | bytes, validate: bool = True) -> RoadNetwork:
    return network_from_dict(_parse(text), validate=validate)


def dumps_network(network: RoadNetwork) -> str:
    return dumps(network_to_dict(network))


def load_network(file) -> RoadNetwork:
    return loads_network(FsPath(file).read_bytes())


def save_network(network: RoadNetwork, file) -> None:
    FsPath(file).write_text(dumps_network(network), encoding="utf-8")


# --- paths ------------------------------------------------------------------


def dumps_path(path: Path) -> str:
    return dumps({"format_version": FORMAT_VERSION, "path": {"segments": list(path.segment_ids)}})


def loads_path(text: str | bytes) -> Path:
    doc = _parse(text)
    body = _require(doc, "path", dict, "document")
    ids = _require(body, "segments", list, "path")
    for sid in ids:
        if not isinstance(sid, _ID) or isinstance(sid, bool):
            raise ParseError("path.segments: identifiers must be strings or integers")
    if not ids:
        raise ValidationFailed(
            ValidationReport((Issue(Severity.ERROR, "empty-path", "path must contain at least one segment"),))
        )
    return Path(tuple(ids))


def load_path(file) -> Path:
    return loads_path(FsPath(file).read_bytes())


def save_path(path: Path, file) -> None:
    FsPath(file).write_text(dumps_path(path), encoding="utf-8")


# --- results ----------------------------------------------------------------


@dataclass(frozen=True)
class ResultDocument:
    traversal: Traversal
    instructions: tuple[Instruction, ...]
    algorithm: str
    timing_ms: float = 0.0
    digests: dict = field(default_factory=dict, hash=False)

    def to_dict(self, include_timing: bool = True) -> dict:
        t = self.traversal
        doc = {
            "format_version": FORMAT_VERSION,
            "algorithm": self.algorithm,
            "traversal": {
                "lane_sequence": list(t.lane_sequence),
                "total_cost": dict(t.total_cost._asdict()),
                "feasible": t.feasible,
                "events": [
                    {"pod_index": e.pod_index, "kind": e.kind.value, "from_lane": e.from_lane, "to_lane": e.to_lane}
                    for e in t.events
                ],
            },
            "instructions": [
                {"kind": i.kind.value, "pod_index": i.pod_index, "detail": list(i.detail)} for i in self.instructions
            ],
            "digests": dict(self.digests),
        }
        if include_timing:
            doc["timing_ms"] = self.timing_ms
        return doc


def dumps_result(result: ResultDocument, include_timing: bool = True) -> str:
    return dumps(result.to_dict(include_timing))


def loads_result(text: str | bytes) -> ResultDocument:
    doc = _parse(text)
    tr = _require(doc, "traversal", dict, "document")
    cost = _require(tr, "total_cost", dict, "traversal")
    try:
        total = CostTuple(cost["infeasible"], cost["unwanted"], cost["lane_changes"])
        events = tuple(
            Event(e["pod_index"], ArcKind(e["kind"]), e["from_lane"], e["to_lane"]) for e in tr.get("events", [])
        )
        instructions = tuple(
            Instruction(InstructionKind(i["kind"]), i["pod_index"], tuple(i["detail"]))
            for i in doc.get("instructions", [])
        )
    except (KeyError, TypeError, ValueError, OverflowError) as exc:
        raise ParseError(f"malformed result document: {exc}") from None
    traversal = Traversal(tuple(_require(tr, "lane_sequence", list, "traversal")), total, events)
    return ResultDocument(
        traversal,
        instructions,
        _require(doc, "algorithm", str, "document"),
        float(doc.get("timing_ms", 0.0)),
        dict(doc.get("digests", {})),
    )


def load_result(file) -> ResultDocument:
    return loads_result(FsPath(file).read_bytes())


def save_result(result: ResultDocument, file) -> None:
    FsPath(file).write_text(dumps_result(result), encoding="utf-8")


# --- DOT --------------------------------------------------------------------

DOT_STYLE = {
    ArcKind.LANE_BODY: {},
    ArcKind.FEASIBLE_TURN: {"color": "black"},
    ArcKind.UNWANTED_TURN: {"color": "blue"},
    ArcKind.LANE_CHANGE: {"color": "orange"},
    ArcKind.INFEASIBLE_TURN: {"color": "gray", "style": "dashed"},
}


def _quote(value: Any) -> str:
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _node_name(node) -> str:
    end = "in" if node.end is End.ENTRY else "out"
    return f"p{node.pod_index}_l{node.lateral_index}_{end}"


def _attrs(attrs: dict) -> str:
    if not attrs:
        return ""
    return " [" + ", ".join(f"{k}={_quote(v)}" for k, v in sorted(attrs.items())) + "]"


def export_dot(llg: LaneLevelGraph, traversal: Optional[Traversal] = None) -> str:
    """Render the graph as a DOT digraph, one cluster per pod.

    With a traversal, the arcs it uses are drawn bold.
    """
    used = set()
    if traversal is not None:
        used = _used_arcs(llg, traversal)
    lines = ["digraph lane_level_graph {", "  rankdir=LR;", "  node [shape=point];"]
    for pod in llg.pods:
        lines.append(f"  subgraph cluster_pod{pod.index} {{")
        lines.append(f"    label={_quote(pod.segment_id)};")
        lines.append('    style="dashed";')
        for nid in pod.node_range:
            node = llg.nodes[nid]
            lines.append(f"    {_node_name(node)} [xlabel={_quote(node.lateral_index)}];")
        for arc in llg.pod_arcs[pod.index]:
            lines.append(_edge_line(arc, (arc.tail_id, arc.head_id) in used, "    "))
        lines.append("  }")
    for arcs in llg.turn_arcs:
        for arc in arcs:
            lines.append(_edge_line(arc, (arc.tail_id, arc.head_id) in used, "  "))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _edge_line(arc, highlight: bool, indent: str) -> str:
    attrs = dict(DOT_STYLE[arc.kind])
    attrs["kind"] = arc.kind.value
    if highlight:
        attrs["penwidth"] = "3"
        attrs["style"] = ",".join(filter(None, [attrs.get("style"), "bold"]))
    return f"{indent}{_node_name(arc.tail)} -> {_node_name(arc.head)}{_attrs(attrs)};"


def _used_arcs(llg: LaneLevelGraph, traversal: Traversal) -> set:
    """Node-id pairs of the arcs a traversal runs over."""
    entries = traversal.entry_lanes
    used: set = set()
    changes: dict[int, list] = {}
    for ev in traversal.events:
        if ev.kind is ArcKind.LANE_CHANGE:
            changes.setdefault(ev.pod_index, []).append(ev)
    for pod in llg.pods:
        p = pod.index
        for ev in changes.get(p, []):
            used.add((pod.entry_id(ev.from_lane), pod.entry_id(ev.to_lane)))
        lane = traversal.lane_sequence[p]
        used.add((pod.entry_id(lane), pod.exit_id(lane)))
        if p + 1 < len(llg.pods):
            nxt = llg.pods[p + 1]
            used.add((pod.exit_id(lane), nxt.entry_id(entries[p + 1])))
    return used


def iter_dot_edges(text: str) -> Iterable[dict]:
    """Yield the attribute dict of every edge in DOT text produced here."""
    pattern = re.compile(r"^\s*(\S+) -> (\S+) \[(.*)\];$")
    attr = re.compile(r'(\w+)="((?:[^"\\]|\\.)*)"')
    for line in text.splitlines():
        m = pattern.match(line)
        if m:
            yield dict(attr.findall(m.group(3)))
