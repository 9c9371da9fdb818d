import itertools

import pytest

from lanelevel import GenSpec, build_llg, gen_random, validate_path


def build(network, path):
    vp = validate_path(network, path)
    return vp, build_llg(network, vp)


def small_specs(count=None):
    """Grid over the small-instance parameter space, several seeds per cell."""
    cells = itertools.product(range(2, 9), range(1, 5), (0.0, 0.3, 0.7, 1.0), (0.0, 0.5))
    specs = []
    for cell_no, (n, k, dens, inc) in enumerate(cells):
        for rep in range(5):
            specs.append(GenSpec(n, k, dens, inc, seed=1000 * cell_no + rep))
    return specs if count is None else specs[:count]


@pytest.fixture
def two_by_two():
    from lanelevel import RoadNetwork, Segment, TurnConnection

    def make(*pairs, convenience="convenient"):
        segs = (Segment.with_lanes("a", "u", "v", 2), Segment.with_lanes("b", "v", "w", 2))
        conns = tuple(TurnConnection("a", i, "b", j, convenience) for i, j in pairs)
        return RoadNetwork({"u", "v", "w"}, segs, conns), ["a", "b"]

    return make


def random_instance(spec):
    network, path = gen_random(spec)
    return network, path
