"""
starMaker: repeated extraction of maximum-degree stars.
"""

from __future__ import annotations

from heapq import heapify, heappop
from typing import Optional, Sequence

from core.circuits import execute_plan, plan_block_queries
from core.oracle import LabelOracle
from core.spanning_tree import assemble_tree, ensure_connected
from models.decomposition import Star, StarDecomposition
from models.graph import RootedTree, SignedGraph
from models.plan import PredictionRecord, QueryPlan
from utils.logger import logger

UNASSIGNED = -1


class MaxDegreeHeap:
    """
    Max-heap of nodes keyed by their static degree, with lazy deletion.

    Discarded nodes stay in the heap and are popped away silently when they
    reach the top. Keys never change. Ties go to the smallest node id.
    """

    def __init__(self, degrees: Sequence[int]):
        """
        Initialize the heap.

        Args:
            degrees: Static degree of every node.
        """
        self._entries = [(-degree, node) for node, degree in enumerate(degrees)]
        heapify(self._entries)
        self._in_use = [True] * len(degrees)
        self._live = len(degrees)
        self.lazy_pops = 0

    def __len__(self) -> int:
        return self._live

    def in_use(self, node: int) -> bool:
        return self._in_use[node]

    def discard(self, node: int) -> None:
        """Mark a node not-in-use without touching the heap."""
        if self._in_use[node]:
            self._in_use[node] = False
            self._live -= 1

    def pop(self) -> Optional[int]:
        """Remove and return the in-use node of largest degree, or ``None``."""
        while self._entries:
            _, node = heappop(self._entries)
            if self._in_use[node]:
                self._in_use[node] = False
                self._live -= 1
                return node
            self.lazy_pops += 1
        return None


class StarAssignment:
    """Star index of every node, ``UNASSIGNED`` until its star is extracted."""

    def __init__(self, node_count: int):
        self.owner = [UNASSIGNED] * node_count
        self.star_count = 0

    def is_free(self, node: int) -> bool:
        return self.owner[node] == UNASSIGNED


def extract_star(
    graph: SignedGraph,
    heap: MaxDegreeHeap,
    assignment: StarAssignment,
) -> Optional[Star]:
    """
    Extract the star centred at the highest-degree unassigned node.

    Its leaves are the centre's neighbours that are still unassigned. Centre
    and leaves are assigned to the new star and marked not-in-use.

    Returns:
        The star, or ``None`` once every node is assigned.
    """
    center = heap.pop()
    if center is None:
        return None
    index = assignment.star_count
    assignment.star_count += 1
    owner = assignment.owner
    owner[center] = index
    leaves: list[int] = []
    star_edges: list[int] = []
    for nbr, edge_id in graph.adjacency[center]:
        if assignment.is_free(nbr):
            owner[nbr] = index
            heap.discard(nbr)
            leaves.append(nbr)
            star_edges.append(edge_id)
    return Star(
        center=center,
        leaves=tuple(leaves),
        star_edges=tuple(star_edges),
        static_degree=graph.degree(center),
        residual_degree=len(leaves),
    )


def decompose_stars(graph: SignedGraph) -> StarDecomposition:
    """Cover a graph with node-disjoint stars by repeated ``extract_star``."""
    heap = MaxDegreeHeap([graph.degree(v) for v in range(graph.node_count)])
    assignment = StarAssignment(graph.node_count)
    stars: list[Star] = []
    while (star := extract_star(graph, heap, assignment)) is not None:
        stars.append(star)
    logger.debug(
        f"Star decomposition: {len(stars)} stars over {graph.node_count} nodes, "
        f"{heap.lazy_pops} lazy pops"
    )
    return StarDecomposition(stars=tuple(stars), owner=tuple(assignment.owner))


def star_tree(star: Star) -> RootedTree:
    """A star as a tree rooted at its centre."""
    parent = {star.center: -1}
    tree_edge = {star.center: -1}
    for leaf, edge_id in zip(star.leaves, star.star_edges):
        parent[leaf] = star.center
        tree_edge[leaf] = edge_id
    return assemble_tree(star.center, (star.center, *star.leaves), parent, tree_edge)


def star_plan(graph: SignedGraph) -> QueryPlan:
    """Query plan of starMaker, without touching any label."""
    decomposition = decompose_stars(graph)
    return plan_block_queries(
        graph,
        [star_tree(star) for star in decomposition.stars],
        decomposition.owner,
        diagnostics={
            "stars": len(decomposition),
            "residual_degree_ratio": decomposition.residual_ratio,
        },
    )


def starmaker_run(graph: SignedGraph, oracle: LabelOracle) -> PredictionRecord:
    """
    Run starMaker.

    Queries every star edge plus one edge per pair of adjacent stars; circuits
    have at most five queried edges.

    Raises:
        DisconnectedGraphError: if the graph is disconnected.
    """
    ensure_connected(graph)
    plan = star_plan(graph)
    logger.info(
        f"starmaker: {len(plan.blocks)} stars, {plan.query_count} queries, "
        f"{plan.test_count} test edges"
    )
    return execute_plan(graph, plan, oracle)
