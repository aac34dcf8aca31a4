"""
treeCutter(k): treelet decomposition of a breadth-first spanning tree.

Also hosts the spanning-tree-only predictor, which is treeCutter with ``k``
at least the tree height.
"""

from __future__ import annotations

from typing import AbstractSet, Optional

import numpy as np

from config.constants import MIN_K, NEIGHBOR_ORDER_SHUFFLED
from core.circuits import execute_plan, plan_block_queries
from core.oracle import LabelOracle
from core.spanning_tree import assemble_tree, bfs_spanning_tree
from models.decomposition import TreeletDecomposition
from models.errors import ParameterError
from models.graph import RootedTree, SignedGraph
from models.plan import PredictionRecord
from utils.logger import logger


def _check_k(k: int) -> None:
    if k < MIN_K:
        raise ParameterError(f"treelet height k must be at least {MIN_K}, got {k}")


def extract_treelet(tree: RootedTree, k: int, removed: AbstractSet[int] = frozenset()) -> int:
    """
    Return the root of the next treelet of ``tree``.

    Depth-first visit from the root ignoring ``removed`` nodes. On the last
    visit of each node its height tag is set (0 for a leaf, else one more than
    the tallest child); the first node whose tag equals ``k``, or the root if
    none does, is returned.

    Raises:
        ParameterError: if ``k < 2``.
    """
    _check_k(k)
    children = tree.children
    height: dict[int, int] = {}
    stack = [(tree.root, False)]
    while stack:
        node, finished = stack.pop()
        if finished:
            h = 0
            for child in children[node]:
                if child not in removed and height[child] + 1 > h:
                    h = height[child] + 1
            height[node] = h
            if h == k or node == tree.root:
                return node
        else:
            stack.append((node, True))
            for child in reversed(children[node]):
                if child not in removed:
                    stack.append((child, False))
    return tree.root


def _subtree(tree: RootedTree, top: int, removed: AbstractSet[int]) -> RootedTree:
    """The subtree rooted at ``top``, skipping ``removed`` nodes."""
    children = tree.children
    parent = {top: -1}
    tree_edge = {top: -1}
    order = [top]
    for node in order:
        for child in children[node]:
            if child not in removed:
                parent[child] = node
                tree_edge[child] = tree.tree_edge[child]
                order.append(child)
    return assemble_tree(top, order, parent, tree_edge)


def decompose(tree: RootedTree, k: int) -> TreeletDecomposition:
    """
    Split a tree into node-disjoint treelets of height at most ``k``.

    One post-order pass: a subtree is cut off as soon as its height tag
    reaches ``k``, and the parent's tag then ignores it. This yields the
    same treelets, in the same order, as calling ``extract_treelet`` and
    removing its subtree until the tree is empty, in linear time.

    Raises:
        ParameterError: if ``k < 2``.
    """
    _check_k(k)
    children = tree.children
    height: dict[int, int] = {}
    cut: set[int] = set()
    treelets: list[RootedTree] = []
    owner = [-1] * (max(tree.nodes) + 1)

    stack = [(tree.root, False)]
    while stack:
        node, finished = stack.pop()
        if not finished:
            stack.append((node, True))
            for child in reversed(children[node]):
                stack.append((child, False))
            continue
        h = 0
        for child in children[node]:
            if child not in cut and height[child] + 1 > h:
                h = height[child] + 1
        height[node] = h
        if h == k or node == tree.root:
            treelet = _subtree(tree, node, cut)
            index = len(treelets)
            for member in treelet.nodes:
                owner[member] = index
            treelets.append(treelet)
            cut.add(node)

    logger.debug(f"Decomposed tree of {len(tree)} nodes into {len(treelets)} treelets (k={k})")
    return TreeletDecomposition(treelets=tuple(treelets), owner=tuple(owner), k=k)


def density_precondition(node_count: int, edge_count: int, k: int) -> bool:
    """Whether ``|E| >= 2|V| - 2 + |V|^2/k^2 + |V|/k`` holds."""
    n = node_count
    return edge_count >= 2 * n - 2 + n * n / (k * k) + n / k


def treecutter_run(
    graph: SignedGraph,
    oracle: LabelOracle,
    k: int,
    rng: np.random.Generator,
    root: Optional[int] = None,
    neighbor_order: str = NEIGHBOR_ORDER_SHUFFLED,
) -> PredictionRecord:
    """
    Run treeCutter(k).

    Queries every treelet edge plus one edge per pair of adjacent treelets and
    predicts the rest by circuit parity.

    Raises:
        ParameterError: if ``k < 2``.
        DisconnectedGraphError: if the graph is disconnected.
    """
    _check_k(k)
    tree = bfs_spanning_tree(graph, root, neighbor_order, rng)
    decomposition = decompose(tree, k)
    if not density_precondition(graph.node_count, graph.edge_count, k):
        logger.warning(
            f"treecutter(k={k}): density precondition fails "
            f"({graph.edge_count} edges, {graph.node_count} nodes); budget balance not guaranteed"
        )
    plan = plan_block_queries(
        graph,
        decomposition.treelets,
        decomposition.owner,
        diagnostics={"treelets": len(decomposition), "tree_height": tree.height},
    )
    logger.info(
        f"treecutter(k={k}): {len(decomposition)} treelets, "
        f"{plan.query_count} queries, {plan.test_count} test edges"
    )
    return execute_plan(graph, plan, oracle)


def spanning_tree_run(
    graph: SignedGraph,
    oracle: LabelOracle,
    rng: np.random.Generator,
    root: Optional[int] = None,
    neighbor_order: str = NEIGHBOR_ORDER_SHUFFLED,
) -> PredictionRecord:
    """
    Query a breadth-first spanning tree only and predict every other edge by
    tree-path parity.

    Raises:
        DisconnectedGraphError: if the graph is disconnected.
    """
    tree = bfs_spanning_tree(graph, root, neighbor_order, rng)
    plan = plan_block_queries(
        graph,
        [tree],
        [0] * graph.node_count,
        diagnostics={"treelets": 1, "tree_height": tree.height},
    )
    logger.info(f"spanning-tree-only: {plan.query_count} queries, {plan.test_count} test edges")
    return execute_plan(graph, plan, oracle)
