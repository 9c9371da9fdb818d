import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from lanelevel import (
    CostTuple,
    LaneTraversalPlanner,
    Path,
    RoadNetwork,
    Segment,
    ValidationFailed,
    check_paths,
    gen_dependency_chain,
    two_intersection_example,
)
from lanelevel.estimator import LaneDataWarning


def test_params_and_clone():
    planner = LaneTraversalPlanner(algorithm="dijkstra")
    assert planner.get_params() == {"algorithm": "dijkstra"}
    copy = clone(planner)
    assert copy.algorithm == "dijkstra" and copy is not planner
    assert planner.set_params(algorithm="sweep").algorithm == "sweep"


def test_unfitted_raises():
    with pytest.raises(NotFittedError):
        LaneTraversalPlanner().predict([["a"]])


def test_fit_predict_transform():
    net, path = two_intersection_example()
    planner = LaneTraversalPlanner().fit(net)
    [t] = planner.predict([path])
    assert t.total_cost == CostTuple(0, 0, 0)
    [g] = planner.transform(path)
    assert len(g) == 3
    [ins] = planner.guidance([list(path)])
    assert ins[0].detail == (1,)
    assert planner.score([path]) == 1.0


def test_algorithms_agree_through_estimator():
    net, path = gen_dependency_chain(20)
    a = LaneTraversalPlanner("sweep").fit(net).predict([path])
    b = LaneTraversalPlanner("dijkstra").fit(net).predict([path])
    assert a == b


def test_fit_validates():
    with pytest.raises(ValueError):
        LaneTraversalPlanner("astar").fit(two_intersection_example()[0])
    bad = RoadNetwork({"u"}, (Segment.with_lanes("a", "u", "v", 1),))
    with pytest.raises(ValidationFailed):
        LaneTraversalPlanner().fit(bad)
    with pytest.raises(TypeError):
        LaneTraversalPlanner().fit({"not": "a network"})
    wide = RoadNetwork({"u", "v"}, (Segment.with_lanes("a", "u", "v", 27),))
    with pytest.warns(LaneDataWarning):
        planner = LaneTraversalPlanner().fit(wide)
    assert len(planner.validation_report_.warnings) == 1


def test_check_paths_rejects_strings():
    net, path = two_intersection_example()
    with pytest.raises(TypeError):
        check_paths(net, "approach")
    with pytest.raises(TypeError):
        check_paths(net, ["approach"])
    assert len(check_paths(net, Path(("approach",)))) == 1
