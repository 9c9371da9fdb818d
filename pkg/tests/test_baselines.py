import pytest
from hypothesis import given, settings, strategies as st

from lanelevel import (
    CostTuple,
    GenSpec,
    RoadNetwork,
    SearchSpaceTooLarge,
    Segment,
    gen_dependency_chain,
    gen_random,
    gen_uniform_chain,
    oracle_best,
    solve_dijkstra,
    solve_greedy,
    solve_sweep,
    two_intersection_example,
)

from conftest import build
from test_solver import enumerate_walks, walk_lanes


def test_oracle_single_lane():
    net = RoadNetwork({"u", "v"}, (Segment.with_lanes("s", "u", "v", 1),))
    vp, _ = build(net, ["s"])
    res = oracle_best(net, vp)
    assert res.best.total_cost == CostTuple(0, 0, 0)
    assert res.evaluated >= 1


def test_oracle_two_intersection_example():
    net, path = two_intersection_example()
    vp, _ = build(net, path)
    res = oracle_best(net, vp)
    assert res.best.total_cost == CostTuple(0, 0, 0)
    assert res.best.lane_sequence[1] == 1
    assert res.evaluated == 2 * 2 * 1


def test_oracle_single_crossing_connection(two_by_two):
    net, path = two_by_two((0, 1))
    vp, _ = build(net, path)
    best = oracle_best(net, vp).best
    assert best.total_cost == CostTuple(0, 0, 0)
    assert best.lane_sequence == (0, 1)


def test_oracle_refuses_large_spaces():
    net, path = gen_uniform_chain(30, 3)
    vp, _ = build(net, path)
    with pytest.raises(SearchSpaceTooLarge):
        oracle_best(net, vp, max_states=10_000)


@settings(max_examples=80, deadline=None)
@given(
    n=st.integers(1, 4),
    k=st.integers(1, 3),
    density=st.sampled_from([0.0, 0.3, 0.7, 1.0]),
    seed=st.integers(0, 2**32),
)
def test_oracle_equals_walk_enumeration(n, k, density, seed):
    net, path = gen_random(GenSpec(n, k, density, 0.5, seed))
    vp, g = build(net, path)
    cost, _, inner = min(enumerate_walks(g))
    best = oracle_best(net, vp).best
    assert tuple(best.total_cost) == cost
    assert best.lane_sequence == walk_lanes(g, inner)
    assert best == solve_sweep(g)


def test_greedy_agrees_when_everything_connects():
    net, path = gen_uniform_chain(12, 3)
    vp, g = build(net, path)
    for w in (1, 3):
        assert solve_greedy(net, vp, w).total_cost == solve_sweep(g).total_cost == CostTuple(0, 0, 0)


@pytest.mark.parametrize("length, window", [(64, 4), (8, 2), (8, 1), (16, 4)])
def test_greedy_misses_lane_dependency(length, window):
    net, path = gen_dependency_chain(length)
    vp, g = build(net, path)
    assert solve_dijkstra(g).total_cost == CostTuple(0, 0, 0)
    greedy = solve_greedy(net, vp, window)
    assert greedy.total_cost > CostTuple(0, 0, 0)
    assert greedy.replay_cost() == greedy.total_cost


@pytest.mark.parametrize("length", [2, 8, 64])
def test_full_lookahead_recovers_optimum(length):
    net, path = gen_dependency_chain(length)
    vp, _ = build(net, path)
    t = solve_greedy(net, vp, length)
    assert t.total_cost == CostTuple(0, 0, 0)
    assert t.lane_sequence == (1,) * length


def test_greedy_never_beats_exact():
    for seed in range(300):
        spec = GenSpec(2 + seed % 7, 1 + seed % 4, (0.0, 0.3, 0.7, 1.0)[seed % 4], (0.0, 0.5)[seed % 2], seed)
        net, path = gen_random(spec)
        vp, g = build(net, path)
        exact = solve_sweep(g).total_cost
        for w in (1, 2, 4):
            greedy = solve_greedy(net, vp, w)
            assert greedy.total_cost >= exact
            assert greedy.replay_cost() == greedy.total_cost
            assert len(greedy.lane_sequence) == len(vp)


def test_greedy_window_must_be_positive():
    net, path = gen_dependency_chain(3)
    vp, _ = build(net, path)
    with pytest.raises(ValueError):
        solve_greedy(net, vp, 0)
