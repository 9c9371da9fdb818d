"""scikit-learn style front end.

``fit`` takes the road network (the "training data" every later query is
answered against); ``transform`` maps paths to lane-level graphs and
``predict`` maps paths to optimal traversals::

    planner = LaneTraversalPlanner(algorithm="sweep").fit(network)
    [traversal] = planner.predict([["e0", "e1", "e2"]])
"""

from __future__ import annotations

import warnings
from typing import Hashable, Iterable, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .graph import LaneLevelGraph, build_llg
from .guidance import Instruction, emit_instructions
from .model import (
    Path,
    RoadNetwork,
    ValidatedPath,
    ValidationFailed,
    ValidationReport,
    validate_network,
    validate_path,
)
from .solver import SOLVERS, Traversal


class LaneDataWarning(UserWarning):
    """Suspicious but usable map data (e.g. implausibly wide segments)."""


def check_network(network: RoadNetwork) -> ValidationReport:
    """Validate a network, raising on errors and warning on suspicious data."""
    if not isinstance(network, RoadNetwork):
        raise TypeError(f"expected a RoadNetwork, got {type(network).__name__}")
    report = validate_network(network)
    if not report.ok:
        raise ValidationFailed(report)
    for issue in report.warnings:
        warnings.warn(issue.message, LaneDataWarning, stacklevel=3)
    return report


def check_paths(network: RoadNetwork, paths) -> list[ValidatedPath]:
    """Resolve a path or an iterable of paths against ``network``.

    Accepts a single :class:`Path`, or an iterable whose items are paths or
    sequences of segment ids. A bare string is rejected because it would
    otherwise be read as a sequence of one-character ids.
    """
    if isinstance(paths, (Path, ValidatedPath)):
        paths = [paths]
    if isinstance(paths, (str, bytes)):
        raise TypeError("paths must be an iterable of paths, not a string")
    out = []
    for p in paths:
        if isinstance(p, ValidatedPath):
            p = p.path
        if isinstance(p, (str, bytes)):
            raise TypeError("each path must be a sequence of segment ids, not a string")
        out.append(validate_path(network, p))
    return out


class LaneTraversalPlanner(BaseEstimator):
    """Optimal lane-level traversals of paths through one road network.

    Parameters
    ----------
    algorithm : {"sweep", "dijkstra"}, default="sweep"
        ``"sweep"`` settles the lane-level graph pod by pod in linear time;
        ``"dijkstra"`` runs the priority-queue search. Both return the same
        traversal.

    Attributes
    ----------
    network_ : RoadNetwork
        The fitted network.
    validation_report_ : ValidationReport
        Warnings collected while validating the network.
    """

    def __init__(self, algorithm: str = "sweep"):
        self.algorithm = algorithm

    def fit(self, X: RoadNetwork, y=None) -> "LaneTraversalPlanner":
        if self.algorithm not in SOLVERS:
            raise ValueError(f"algorithm must be one of {sorted(SOLVERS)}, got {self.algorithm!r}")
        self.validation_report_ = check_network(X)
        self.network_ = X
        return self

    def transform(self, X: Iterable[Sequence[Hashable]] | Path) -> list[LaneLevelGraph]:
        check_is_fitted(self, "network_")
        return [build_llg(self.network_, p) for p in check_paths(self.network_, X)]

    def predict(self, X: Iterable[Sequence[Hashable]] | Path) -> list[Traversal]:
        check_is_fitted(self, "network_")
        solve = SOLVERS[self.algorithm]
        return [solve(llg) for llg in self.transform(X)]

    def guidance(self, X: Iterable[Sequence[Hashable]] | Path) -> list[list[Instruction]]:
        check_is_fitted(self, "network_")
        solve = SOLVERS[self.algorithm]
        out = []
        for vp in check_paths(self.network_, X):
            traversal = solve(build_llg(self.network_, vp))
            out.append(emit_instructions(traversal, self.network_, vp))
        return out

    def score(self, X, y=None) -> float:
        """Fraction of paths whose optimal traversal is feasible."""
        traversals = self.predict(X)
        if not traversals:
            return 0.0
        return sum(t.feasible for t in traversals) / len(traversals)
