"""
Query-budget and circuit-length guarantees of the learners, checked at runtime.
"""

from __future__ import annotations

from typing import Optional

from config.constants import (
    ALGORITHM_SPANNING_TREE,
    ALGORITHM_STARMAKER,
    ALGORITHM_TREECUTTER,
    ALGORITHM_TREELETSTAR,
)
from core.treecutter import density_precondition
from models.graph import SignedGraph
from models.plan import PredictionRecord


def treecutter_query_bound(n: int, k: int) -> float:
    return n - 1 + n * n / (2 * k * k) + n / (2 * k)


def starmaker_query_bound(n: int) -> float:
    return n - 1 + n ** 1.5


def treeletstar_query_bound(n: int, k: int) -> float:
    return n - 1 + ((n - 1) / k + 1) ** 1.5


def query_bound(algorithm: str, n: int, k: Optional[int]) -> float:
    if algorithm == ALGORITHM_TREECUTTER:
        return treecutter_query_bound(n, k)
    if algorithm == ALGORITHM_STARMAKER:
        return starmaker_query_bound(n)
    if algorithm == ALGORITHM_TREELETSTAR:
        return treeletstar_query_bound(n, k)
    return n - 1


def circuit_bound(algorithm: str, k: Optional[int], tree_height: Optional[int] = None) -> Optional[int]:
    """
    Longest possible circuit, in queried edges.

    A treelet has diameter at most ``2k``; a star, 2. Across a star of
    treelets a path crosses at most three treelets and two witness edges,
    so a cross-star circuit has at most ``2 (6k + 2) + 1`` edges. When the
    whole spanning tree is one block, circuits are tree paths bounded by twice
    its height.
    """
    if algorithm == ALGORITHM_STARMAKER:
        return 5
    single_block = tree_height is not None and (k is None or tree_height <= k)
    if single_block:
        return 2 * tree_height
    if algorithm == ALGORITHM_TREECUTTER:
        return 4 * k + 1
    if algorithm == ALGORITHM_TREELETSTAR:
        return 12 * k + 5
    return None


def check_bounds(
    algorithm: str,
    graph: SignedGraph,
    record: PredictionRecord,
    k: Optional[int] = None,
) -> list[str]:
    """Return a description of every guarantee the record violates."""
    if algorithm == ALGORITHM_SPANNING_TREE:
        k = None
    violations: list[str] = []
    n = graph.node_count
    budget = query_bound(algorithm, n, k)
    if record.query_count > budget:
        violations.append(f"query count {record.query_count} exceeds bound {budget:.1f}")

    height = record.plan.diagnostics.get("tree_height")
    limit = circuit_bound(algorithm, k, int(height) if height is not None else None)
    if limit is not None and record.max_circuit > limit:
        violations.append(f"circuit length {record.max_circuit} exceeds bound {limit}")

    if (
        algorithm == ALGORITHM_TREECUTTER
        and density_precondition(n, graph.edge_count, k)
        and record.query_count > graph.edge_count / 2
    ):
        violations.append(f"query count {record.query_count} exceeds half of {graph.edge_count} edges")

    if record.mistakes is not None and record.mistakes > record.test_count:
        violations.append("more mistakes than test edges")
    return violations
