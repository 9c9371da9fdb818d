"""Exact lane-level traversals of segment-level paths."""

from .baselines import OracleResult, SearchSpaceTooLarge, oracle_best, solve_greedy
from .generate import GenSpec, gen_dependency_chain, gen_random, gen_uniform_chain, two_intersection_example
from .graph import Arc, ArcKind, End, LaneLevelGraph, LaneNode, Pod, build_llg, collapse, pod_arc_bound
from .guidance import Instruction, InstructionKind, emit_instructions, replay
from .model import (
    Convenience,
    CostTuple,
    DisconnectedAt,
    Lane,
    Path,
    PathError,
    RoadNetwork,
    Segment,
    TurnConnection,
    UnknownSegment,
    ValidatedPath,
    ValidationFailed,
    ValidationReport,
    cost_add,
    cost_compare,
    validate_network,
    validate_path,
)
from .solver import Event, Traversal, reconstruct, solve, solve_dijkstra, solve_sweep

__version__ = "0.1.0"


_ESTIMATOR_NAMES = {"LaneTraversalPlanner", "check_network", "check_paths"}


def __getattr__(name):
    # keeps scikit-learn off the import path of the CLI
    if name in _ESTIMATOR_NAMES:
        from . import estimator

        return getattr(estimator, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
