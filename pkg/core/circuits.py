"""
Shared query planning and circuit-parity prediction.

Every learner reduces to the same pattern: cover the graph with node-disjoint
blocks whose tree edges are queried, query one connector edge per pair of
adjacent blocks, then predict each remaining edge by the sign product of the
queried path that closes it into a circuit.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from core.oracle import LabelOracle
from core.spanning_tree import tag_parities, tree_distance, tree_path_edges
from models.graph import EdgePartition, RootedTree, SignedGraph
from models.plan import NO_CONNECTOR, PredictionRecord, QueryPlan
from utils.logger import logger


def plan_block_queries(
    graph: SignedGraph,
    blocks: Sequence[RootedTree],
    owner: Sequence[int],
    diagnostics: dict[str, float] | None = None,
) -> QueryPlan:
    """
    Choose the query set for a block cover.

    All block tree edges are queried. Blocks are then scanned in order, each
    member's adjacency in stored order. A vector with one slot per block keeps
    the first edge seen towards every other block: that edge is queried and
    later edges towards the same block are predicted through it. Each edge is
    marked on first sight, so a block pair gets exactly one connector and the
    whole scan is linear in the number of edges.

    Args:
        graph: Host graph (labels are not read).
        blocks: Node-disjoint trees covering every node.
        owner: Block index of every node.
        diagnostics: Optional statistics to carry in the plan.
    """
    handled = bytearray(graph.edge_count)
    queries: set[int] = set()
    for block in blocks:
        for edge_id in block.edges:
            handled[edge_id] = 1
            queries.add(edge_id)

    slot = [NO_CONNECTOR] * len(blocks)
    connector: dict[int, int] = {}
    adjacency = graph.adjacency
    for index, block in enumerate(blocks):
        touched: list[int] = []
        for node in block.nodes:
            for nbr, edge_id in adjacency[node]:
                if handled[edge_id]:
                    continue
                handled[edge_id] = 1
                target = owner[nbr]
                if target == index:
                    connector[edge_id] = NO_CONNECTOR
                elif slot[target] == NO_CONNECTOR:
                    slot[target] = edge_id
                    touched.append(target)
                    queries.add(edge_id)
                else:
                    connector[edge_id] = slot[target]
        for target in touched:
            slot[target] = NO_CONNECTOR

    test_edges = tuple(sorted(connector))
    partition = EdgePartition(frozenset(queries), frozenset(test_edges))
    logger.debug(
        f"Plan: {len(blocks)} blocks, {partition.query_count} queries, "
        f"{partition.test_count} test edges"
    )
    return QueryPlan(
        blocks=tuple(blocks),
        owner=tuple(owner),
        partition=partition,
        test_edges=test_edges,
        connector=connector,
        diagnostics=dict(diagnostics or {}),
    )


def _oriented(graph: SignedGraph, plan: QueryPlan, edge_id: int, near: int) -> tuple[int, int]:
    """Endpoints of a connector, the one in ``near``'s block first."""
    a, b = graph.edges[edge_id]
    return (a, b) if plan.owner[a] == plan.owner[near] else (b, a)


def execute_plan(graph: SignedGraph, plan: QueryPlan, oracle: LabelOracle) -> PredictionRecord:
    """
    Query the planned edges, seal the oracle and predict every test edge.

    Within a block, the prediction for ``(u, v)`` is ``y_u * y_v``. Across
    blocks, with connector ``(i', i'')``, it is
    ``y_u * y_i' * Y_i'i'' * y_i'' * y_v``.
    """
    revealed = oracle.query_all(plan.query_edges)
    oracle.seal()

    blocks = [tag_parities(block, revealed) for block in plan.blocks]
    tag = [0] * graph.node_count
    for block in blocks:
        for node, value in block.parity_tag.items():
            tag[node] = value

    owner = plan.owner
    count = len(plan.test_edges)
    predicted = np.empty(count, dtype=np.int8)
    length = np.empty(count, dtype=np.int32)
    for index, edge_id in enumerate(plan.test_edges):
        u, v = graph.edges[edge_id]
        via = plan.connector[edge_id]
        if via == NO_CONNECTOR:
            predicted[index] = tag[u] * tag[v]
            length[index] = tree_distance(blocks[owner[u]], u, v)
        else:
            near, far = _oriented(graph, plan, via, u)
            predicted[index] = tag[u] * tag[near] * revealed[via] * tag[far] * tag[v]
            length[index] = (
                tree_distance(blocks[owner[u]], u, near)
                + 1
                + tree_distance(blocks[owner[v]], far, v)
            )
    return PredictionRecord(plan=plan, predicted=predicted, circuit_length=length)


def circuit_of(graph: SignedGraph, plan: QueryPlan, edge_id: int) -> list[int]:
    """Queried edges, in path order, that close test edge ``edge_id`` into a circuit."""
    u, v = graph.edges[edge_id]
    via = plan.connector[edge_id]
    owner = plan.owner
    if via == NO_CONNECTOR:
        return tree_path_edges(plan.blocks[owner[u]], u, v)
    near, far = _oriented(graph, plan, via, u)
    return (
        tree_path_edges(plan.blocks[owner[u]], u, near)
        + [via]
        + tree_path_edges(plan.blocks[owner[v]], far, v)
    )


def flip_bound(graph: SignedGraph, plan: QueryPlan, flipped: np.ndarray) -> int:
    """
    Right-hand side of the deterministic mistake bound.

    The number of flipped edges plus, for every test edge, the number of
    flipped edges on its circuit.
    """
    total = int(np.count_nonzero(flipped))
    for edge_id in plan.test_edges:
        total += sum(1 for e in circuit_of(graph, plan, edge_id) if flipped[e])
    return total
