"""
Query plans and prediction records shared by the active learners.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from models.graph import EdgePartition, RootedTree

NO_CONNECTOR = -1


@dataclass(frozen=True, eq=False)
class QueryPlan:
    """
    Label-independent output of a learner's selection phase.

    The host nodes are covered by node-disjoint ``blocks`` (treelets, stars or
    stars of treelets), each a tree made of queried edges. ``owner[v]`` is the
    block of node ``v``. Every test edge either lies inside one block, and
    is predicted by the parity of the block path, or crosses two blocks, and
    is predicted through ``connector[e]``, the single queried edge chosen for
    that block pair.
    """
    blocks: tuple[RootedTree, ...]
    owner: tuple[int, ...]
    partition: EdgePartition
    test_edges: tuple[int, ...]
    connector: dict[int, int]
    diagnostics: dict[str, float] = field(default_factory=dict)

    @property
    def query_edges(self) -> list[int]:
        return sorted(self.partition.query_edges)

    @property
    def query_count(self) -> int:
        return self.partition.query_count

    @property
    def test_count(self) -> int:
        return self.partition.test_count


@dataclass(frozen=True, eq=False)
class PredictionRecord:
    """
    Predictions of one run, aligned with ``test_edges`` (ascending edge ids).

    ``circuit_length[i]`` counts the queried edges on the path that closes
    ``test_edges[i]`` into a circuit. ``mistakes`` is ``None`` until the
    record is scored against the ground truth.
    """
    plan: QueryPlan
    predicted: np.ndarray
    circuit_length: np.ndarray
    mistakes: Optional[int] = None

    @property
    def partition(self) -> EdgePartition:
        return self.plan.partition

    @property
    def test_edges(self) -> tuple[int, ...]:
        return self.plan.test_edges

    @property
    def query_count(self) -> int:
        return self.plan.query_count

    @property
    def test_count(self) -> int:
        return self.plan.test_count

    @property
    def max_circuit(self) -> int:
        return int(self.circuit_length.max()) if len(self.circuit_length) else 0

    @property
    def mean_circuit(self) -> float:
        return float(self.circuit_length.mean()) if len(self.circuit_length) else 0.0

    def score(self, truth: np.ndarray) -> "PredictionRecord":
        """Return a copy with ``mistakes`` filled from per-edge true signs."""
        expected = np.asarray(truth)[list(self.test_edges)]
        return replace(self, mistakes=int(np.count_nonzero(expected != self.predicted)))

    def same_as(self, other: "PredictionRecord") -> bool:
        """Bit-for-bit equality of partition, predictions and circuits."""
        return (
            self.partition == other.partition
            and self.test_edges == other.test_edges
            and np.array_equal(self.predicted, other.predicted)
            and np.array_equal(self.circuit_length, other.circuit_length)
            and self.mistakes == other.mistakes
        )
