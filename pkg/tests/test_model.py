import itertools
import random

import pytest
from hypothesis import given, strategies as st

from lanelevel import (
    CostTuple,
    DisconnectedAt,
    Lane,
    Path,
    PathError,
    RoadNetwork,
    Segment,
    TurnConnection,
    UnknownSegment,
    cost_add,
    cost_compare,
    validate_network,
    validate_path,
)
from lanelevel.model import Ordering

counts = st.integers(min_value=0, max_value=2**40)
costs = st.builds(CostTuple, counts, counts, counts)


def single_segment():
    return RoadNetwork({"u", "v"}, (Segment.with_lanes("s1", "u", "v", 1),))


@pytest.mark.parametrize(
    "a, b, expected",
    [((0, 0, 0), (1, 2, 3), (1, 2, 3)), ((1, 0, 2), (0, 1, 1), (1, 1, 3)), ((0, 1, 0), (0, 1, 0), (0, 2, 0))],
)
def test_cost_add(a, b, expected):
    assert cost_add(CostTuple(*a), CostTuple(*b)) == CostTuple(*expected)
    assert CostTuple(*a) + CostTuple(*b) == expected


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0, 5, 9), (1, 0, 0), Ordering.LESS),
        ((0, 0, 2), (0, 1, 0), Ordering.LESS),
        ((2, 3, 4), (2, 3, 4), Ordering.EQUAL),
        ((1, 0, 0), (0, 9, 9), Ordering.GREATER),
    ],
)
def test_cost_compare(a, b, expected):
    assert cost_compare(CostTuple(*a), CostTuple(*b)) is expected


def test_cost_overflow_is_fatal():
    top = CostTuple(2**64 - 1, 0, 0)
    with pytest.raises(OverflowError):
        cost_add(top, CostTuple(1, 0, 0))
    with pytest.raises(OverflowError):
        CostTuple(-1, 0, 0)


@given(costs, costs, costs)
def test_order_is_total_and_compatible_with_addition(a, b, c):
    ab, ba = cost_compare(a, b), cost_compare(b, a)
    assert ab == -ba
    assert (ab is Ordering.EQUAL) == (a == b)
    if a <= b:
        assert a + c <= b + c
    if a <= b and b <= c:
        assert a <= c
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


def test_minimal_network_is_clean():
    assert len(validate_network(single_segment())) == 0


def test_lane_index_out_of_bounds():
    segs = (Segment.with_lanes("a", "u", "v", 2), Segment.with_lanes("b", "v", "w", 2))
    net = RoadNetwork({"u", "v", "w"}, segs, (TurnConnection("a", 2, "b", 0),))
    report = validate_network(net)
    assert [i.code for i in report.errors] == ["lane-bounds"]
    assert "lane index out of bounds" in report.errors[0].message


def test_wide_segment_warns():
    net = RoadNetwork({"u", "v"}, (Segment.with_lanes("s", "u", "v", 30),))
    report = validate_network(net)
    assert report.ok
    assert len(report.warnings) == 1
    assert "lane count exceeds 26" in report.warnings[0].message


def test_structural_errors_are_all_reported():
    segs = (
        Segment.with_lanes("a", "u", "v", 1),
        Segment.with_lanes("a", "u", "v", 1),
        Segment("c", "v", "nowhere", ()),
        Segment("d", "u", "v", (Lane(1),)),
        Segment.with_lanes("e", "w", "u", 1),
    )
    conns = (
        TurnConnection("a", 0, "d", 0),
        TurnConnection("a", 0, "c", 0),
        TurnConnection("a", 0, "zz", 0),
        TurnConnection("e", 0, "a", 0),
        TurnConnection("e", 0, "a", 0),
    )
    net = RoadNetwork({"u", "v", "w"}, segs, conns)
    codes = sorted(i.code for i in validate_network(net).errors)
    assert codes == sorted(
        [
            "duplicate-segment",
            "unknown-intersection",
            "no-lanes",
            "lateral-index",
            "no-shared-intersection",
            "lane-bounds",
            "unknown-segment",
            "duplicate-connection",
        ]
    )


def test_validate_path_examples():
    net = single_segment()
    assert validate_path(net, ["s1"]).path == Path(("s1",))
    two = RoadNetwork(
        {"u", "v", "w", "x"}, (Segment.with_lanes("s1", "u", "v", 1), Segment.with_lanes("s2", "w", "x", 1))
    )
    with pytest.raises(DisconnectedAt) as exc:
        validate_path(two, ["s1", "s2"])
    assert exc.value.position == 0
    with pytest.raises(UnknownSegment) as exc:
        validate_path(net, ["s1", "sX"])
    assert exc.value.segment_id == "sX"
    with pytest.raises(PathError):
        validate_path(net, [])


def test_validate_path_matches_adjacency_exhaustively():
    rng = random.Random(7)
    for _ in range(30):
        nodes = list(range(4))
        segs = [Segment.with_lanes(f"s{i}", rng.choice(nodes), rng.choice(nodes), 1) for i in range(5)]
        net = RoadNetwork(set(nodes), segs)
        ids = [s.id for s in segs]
        for length in (1, 2, 3):
            for combo in itertools.product(ids, repeat=length):
                chain = [net.segment(s) for s in combo]
                ok = all(x.target == y.source for x, y in zip(chain, chain[1:]))
                try:
                    validate_path(net, combo)
                    accepted = True
                except DisconnectedAt:
                    accepted = False
                assert accepted == ok
