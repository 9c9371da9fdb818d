from collections import deque

import networkx as nx
import pytest

from lanelevel import (
    ArcKind,
    GenSpec,
    LaneNode,
    Path,
    RoadNetwork,
    Segment,
    build_llg,
    collapse,
    gen_dependency_chain,
    gen_random,
    pod_arc_bound,
    two_intersection_example,
    validate_path,
)
from lanelevel.graph import End, MalformedGraph

from conftest import build, small_specs


def test_single_lane_single_segment():
    net = RoadNetwork({"u", "v"}, (Segment.with_lanes("s", "u", "v", 1),))
    _, g = build(net, ["s"])
    assert g.node_count == 2
    counts = g.kind_counts()
    assert counts[ArcKind.LANE_BODY] == 1
    assert g.arc_count == 1


def test_fully_connected_two_by_two(two_by_two):
    net, path = two_by_two((0, 0), (0, 1), (1, 0), (1, 1))
    _, g = build(net, path)
    counts = g.kind_counts()
    # hand count: 2 bodies and one lane-change pair per pod, 4 declared turns
    assert counts == {
        ArcKind.LANE_BODY: 4,
        ArcKind.FEASIBLE_TURN: 4,
        ArcKind.UNWANTED_TURN: 0,
        ArcKind.INFEASIBLE_TURN: 0,
        ArcKind.LANE_CHANGE: 4,
    }


def test_undeclared_three_lane_boundary_meets_bound():
    segs = (Segment.with_lanes("a", "u", "v", 3), Segment.with_lanes("b", "v", "w", 3))
    net = RoadNetwork({"u", "v", "w"}, segs)
    _, g = build(net, ["a", "b"])
    assert sum(a.kind is ArcKind.INFEASIBLE_TURN for a in g.turn_arcs[0]) == 9
    assert g.boundary_arc_count(0) == 13 == pod_arc_bound(3, 3)


def test_inconvenient_connection_becomes_unwanted_turn(two_by_two):
    net, path = two_by_two((0, 1), convenience="inconvenient")
    _, g = build(net, path)
    kinds = {(a.tail.lateral_index, a.head.lateral_index): a.kind for a in g.turn_arcs[0]}
    assert kinds[(0, 1)] is ArcKind.UNWANTED_TURN
    assert [k for k in kinds.values()].count(ArcKind.INFEASIBLE_TURN) == 3


@pytest.mark.parametrize("k_out, k_in, expected", [(1, 1, 1), (3, 3, 13), (26, 26, 726), (2, 4, 14)])
def test_pod_arc_bound(k_out, k_in, expected):
    assert pod_arc_bound(k_out, k_in) == expected


def test_pod_arc_bound_matches_uniform_formula():
    for k in range(1, 30):
        assert pod_arc_bound(k, k) == k * k + 2 * (k - 1)
    with pytest.raises(ValueError):
        pod_arc_bound(0, 2)


def _graphs():
    for spec in small_specs()[::7]:
        net, path = gen_random(spec)
        yield net, path, build(net, path)[1]
    for length in (2, 3, 8):
        net, path = gen_dependency_chain(length)
        yield net, path, build(net, path)[1]


@pytest.mark.parametrize("net, path, g", list(_graphs()))
def test_structural_invariants(net, path, g):
    for arc in g.arcs():
        assert arc.cost == arc.kind.cost
        a, b = arc.tail.pod_index, arc.head.pod_index
        if arc.kind.is_turn:
            assert b == a + 1 and arc.tail.end is End.EXIT and arc.head.end is End.ENTRY
        elif arc.kind is ArcKind.LANE_CHANGE:
            assert a == b and arc.tail.end is arc.head.end is End.ENTRY
            assert abs(arc.tail.lateral_index - arc.head.lateral_index) == 1
        else:
            assert a == b and arc.tail.lateral_index == arc.head.lateral_index
            assert (arc.tail.end, arc.head.end) == (End.ENTRY, End.EXIT)
        assert g.nodes[arc.tail_id] == arc.tail and g.nodes[arc.head_id] == arc.head

    for i in range(len(g.pods) - 1):
        k_out, k_in = g.pods[i].lane_count, g.pods[i + 1].lane_count
        pairs = {(a.tail.lateral_index, a.head.lateral_index) for a in g.turn_arcs[i]}
        assert len(g.turn_arcs[i]) == len(pairs) == k_out * k_in
        assert g.boundary_arc_count(i) <= pod_arc_bound(k_out, k_in)

    # every cycle needs a lane change: without them the graph is a DAG
    dag = nx.DiGraph((a.tail_id, a.head_id) for a in g.arcs() if a.kind is not ArcKind.LANE_CHANGE)
    assert nx.is_directed_acyclic_graph(dag)

    sinks = {g.node_id(s) for s in g.sinks}
    for src in g.sources:
        seen = {g.node_id(src)}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for arc in g.out_arcs(u):
                if arc.head_id not in seen:
                    seen.add(arc.head_id)
                    queue.append(arc.head_id)
        assert sinks <= seen

    assert collapse(g) == Path(path.segment_ids)


def test_collapse_examples():
    net = RoadNetwork({"u", "v"}, (Segment.with_lanes("s", "u", "v", 1),))
    assert collapse(build(net, ["s"])[1]) == Path(("s",))
    net, path = two_intersection_example()
    assert collapse(build(net, path)[1]) == Path(("approach", "middle", "exit"))


def test_collapse_rejects_malformed_graph():
    net, path = gen_dependency_chain(3)
    g = build(net, path)[1]
    from lanelevel.graph import LaneLevelGraph

    broken = LaneLevelGraph(g.pods, g.pod_arcs, g.turn_arcs[:1])
    with pytest.raises(MalformedGraph):
        collapse(broken)
    skipping = LaneLevelGraph(g.pods, g.pod_arcs, (g.turn_arcs[0], g.turn_arcs[0]))
    with pytest.raises(MalformedGraph):
        collapse(skipping)


def test_node_ids_are_dense_and_unique():
    net, path = gen_random(GenSpec(6, 4, 0.5, 0.0, seed=3))
    g = build(net, path)[1]
    ids = [g.node_id(n) for n in g.nodes]
    assert ids == list(range(g.node_count))
    with pytest.raises(KeyError):
        g.node_id(LaneNode(0, 99, End.ENTRY))
