"""
treeletStar(k): stars of treelets over the contraction graph.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from config.constants import MIN_K, NEIGHBOR_ORDER_SHUFFLED
from core.circuits import execute_plan, plan_block_queries
from core.oracle import LabelOracle
from core.spanning_tree import bfs_spanning_tree, tree_from_edges
from core.starmaker import decompose_stars, star_plan
from core.treecutter import decompose
from models.decomposition import (
    ContractionGraph,
    StarDecomposition,
    StarOfTreelets,
    TreeletDecomposition,
)
from models.errors import ParameterError
from models.graph import RootedTree, SignedGraph
from models.plan import PredictionRecord
from utils.logger import logger


def build_contraction_graph(graph: SignedGraph, decomposition: TreeletDecomposition) -> ContractionGraph:
    """
    Contract every treelet to a node.

    One pass over the host edges: an edge whose endpoints lie in different
    treelets creates the contraction edge on first sight and becomes its
    witness.
    """
    owner = decomposition.owner
    index: dict[tuple[int, int], int] = {}
    pairs: list[tuple[int, int]] = []
    witness: list[int] = []
    for edge_id, (u, v) in enumerate(graph.edges):
        a, b = owner[u], owner[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key not in index:
            index[key] = len(pairs)
            pairs.append(key)
            witness.append(edge_id)
    contracted = SignedGraph.from_edges(len(decomposition), pairs)
    return ContractionGraph(
        graph=contracted,
        witness=tuple(witness),
        node_of=tuple(owner),
        representative=tuple(treelet.root for treelet in decomposition.treelets),
    )


def stars_of_treelets(contraction: ContractionGraph, stars: StarDecomposition) -> list[StarOfTreelets]:
    """Translate a star decomposition of the contraction graph to host witness edges."""
    return [
        StarOfTreelets(
            center_treelet=star.center,
            leaf_treelets=star.leaves,
            intra_star_query_edges=tuple(contraction.witness[c] for c in star.star_edges),
        )
        for star in stars.stars
    ]


def _star_block(graph: SignedGraph, decomposition: TreeletDecomposition, star: StarOfTreelets) -> RootedTree:
    """One tree over a star of treelets, rooted at the centre treelet's root."""
    center = decomposition.treelets[star.center_treelet]
    if not star.leaf_treelets:
        return center
    edges = list(center.edges)
    for leaf in star.leaf_treelets:
        edges.extend(decomposition.treelets[leaf].edges)
    edges.extend(star.intra_star_query_edges)
    return tree_from_edges(graph, center.root, edges)


def treeletstar_run(
    graph: SignedGraph,
    oracle: LabelOracle,
    k: int,
    rng: np.random.Generator,
    root: Optional[int] = None,
    neighbor_order: str = NEIGHBOR_ORDER_SHUFFLED,
) -> PredictionRecord:
    """
    Run treeletStar(k).

    Treelets come from treeCutter's decomposition. The contraction graph is
    split into stars; inside a star the witness edge of every centre-leaf
    contraction edge is queried, so the treelets of a star plus those
    witnesses form one tree with constant-time parities. One edge per pair of
    adjacent stars is then queried and everything else is predicted.

    Raises:
        ParameterError: if ``k < 2``.
        DisconnectedGraphError: if the graph is disconnected.
    """
    if k < MIN_K:
        raise ParameterError(f"treelet height k must be at least {MIN_K}, got {k}")
    tree = bfs_spanning_tree(graph, root, neighbor_order, rng)
    decomposition = decompose(tree, k)
    contraction = build_contraction_graph(graph, decomposition)
    star_decomposition = decompose_stars(contraction.graph)
    stars = stars_of_treelets(contraction, star_decomposition)

    blocks = [_star_block(graph, decomposition, star) for star in stars]
    owner = [star_decomposition.owner[t] for t in decomposition.owner]
    plan = plan_block_queries(
        graph,
        blocks,
        owner,
        diagnostics={
            "treelets": len(decomposition),
            "tree_height": tree.height,
            "contraction_edges": contraction.graph.edge_count,
            "stars": len(stars),
            "residual_degree_ratio": star_decomposition.residual_ratio,
            "starmaker_queries": star_plan(graph).query_count,
        },
    )
    if plan.query_count > plan.diagnostics["starmaker_queries"]:
        logger.info(
            f"treeletstar(k={k}): {plan.query_count} queries, more than starmaker's "
            f"{plan.diagnostics['starmaker_queries']} on this graph"
        )
    logger.info(
        f"treeletstar(k={k}): {len(decomposition)} treelets, {len(stars)} stars, "
        f"{plan.query_count} queries, {plan.test_count} test edges"
    )
    return execute_plan(graph, plan, oracle)
