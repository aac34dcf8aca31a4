"""
Breadth-first spanning trees, parity tags and tree-path queries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import replace
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from config.constants import NEIGHBOR_ORDER_INPUT, NEIGHBOR_ORDER_SHUFFLED
from models.errors import DisconnectedGraphError, ParameterError
from models.graph import RootedTree, Sign, SignedGraph

SignLookup = Union[Sequence[int], np.ndarray, Mapping[int, int]]


def default_root(graph: SignedGraph) -> int:
    """Highest-degree node, smallest id on ties."""
    return max(range(graph.node_count), key=lambda v: (graph.degree(v), -v))


def assemble_tree(
    root: int,
    order: Sequence[int],
    parent: dict[int, int],
    tree_edge: dict[int, int],
) -> RootedTree:
    """
    Finish a tree from a parents-first node order.

    Fills depths top-down and height tags bottom-up (0 at leaves, else one
    more than the tallest child).
    """
    depth = {root: 0}
    for node in order:
        if node != root:
            depth[node] = depth[parent[node]] + 1
    height = dict.fromkeys(order, 0)
    for node in reversed(order):
        if node != root:
            up = parent[node]
            if height[node] + 1 > height[up]:
                height[up] = height[node] + 1
    return RootedTree(
        root=root,
        nodes=tuple(order),
        parent=parent,
        tree_edge=tree_edge,
        depth=depth,
        height_tag=height,
    )


def bfs_spanning_tree(
    graph: SignedGraph,
    root: Optional[int] = None,
    neighbor_order: str = NEIGHBOR_ORDER_INPUT,
    rng: Optional[np.random.Generator] = None,
) -> RootedTree:
    """
    Breadth-first spanning tree of a connected graph.

    Args:
        graph: Host graph.
        root: Start node; defaults to ``default_root``.
        neighbor_order: ``"input"`` scans adjacency lists as stored,
            ``"shuffled"`` scans each list in a fresh random order.
        rng: Generator for the shuffled order.

    Raises:
        DisconnectedGraphError: naming the first unreachable node.
        ParameterError: on a bad root or order policy.
    """
    if root is None:
        root = default_root(graph)
    if not 0 <= root < graph.node_count:
        raise ParameterError(f"root {root} out of range")
    if neighbor_order == NEIGHBOR_ORDER_SHUFFLED:
        if rng is None:
            raise ParameterError("shuffled neighbour order needs a generator")
    elif neighbor_order != NEIGHBOR_ORDER_INPUT:
        raise ParameterError(f"unknown neighbour order {neighbor_order!r}")

    parent = {root: -1}
    tree_edge = {root: -1}
    order = [root]
    queue = deque([root])
    while queue:
        node = queue.popleft()
        neighbours = graph.adjacency[node]
        if neighbor_order == NEIGHBOR_ORDER_SHUFFLED and len(neighbours) > 1:
            neighbours = [neighbours[i] for i in rng.permutation(len(neighbours))]
        for nbr, edge_id in neighbours:
            if nbr not in parent:
                parent[nbr] = node
                tree_edge[nbr] = edge_id
                order.append(nbr)
                queue.append(nbr)

    if len(order) < graph.node_count:
        raise DisconnectedGraphError(next(v for v in range(graph.node_count) if v not in parent))
    return assemble_tree(root, order, parent, tree_edge)


def tree_from_edges(graph: SignedGraph, root: int, edge_ids: Iterable[int]) -> RootedTree:
    """
    Root the tree formed by ``edge_ids`` at ``root``.

    Members are the nodes reachable from ``root`` through those edges, which
    must form a forest.

    Raises:
        ParameterError: if the edges close a cycle.
    """
    incident: dict[int, list[tuple[int, int]]] = {}
    for edge_id in edge_ids:
        u, v = graph.edges[edge_id]
        incident.setdefault(u, []).append((v, edge_id))
        incident.setdefault(v, []).append((u, edge_id))

    parent = {root: -1}
    tree_edge = {root: -1}
    order = [root]
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for nbr, edge_id in incident.get(node, ()):
            if edge_id == tree_edge[node]:
                continue
            if nbr in parent:
                raise ParameterError(f"edge {edge_id} closes a cycle")
            parent[nbr] = node
            tree_edge[nbr] = edge_id
            order.append(nbr)
            queue.append(nbr)
    return assemble_tree(root, order, parent, tree_edge)


def tag_parities(tree: RootedTree, signs: SignLookup) -> RootedTree:
    """
    Tag every member with the parity of its path to the root.

    ``signs`` maps host edge ids to +1/-1 and must cover the tree edges. After
    tagging, the parity of the path between two members is the product of
    their tags.
    """
    tags = {tree.root: 1}
    parent = tree.parent
    tree_edge = tree.tree_edge
    for node in tree.nodes:
        if node != tree.root:
            tags[node] = tags[parent[node]] * int(signs[tree_edge[node]])
    return replace(tree, parity_tag=tags)


def tree_path_parity(tree: RootedTree, u: int, v: int) -> Sign:
    """
    Sign product along the tree path between two members, in constant time.

    Raises:
        ParameterError: on non-members or an untagged tree.
    """
    if not (tree.is_member(u) and tree.is_member(v)):
        raise ParameterError(f"nodes {u}, {v} are not both members of the tree")
    if not tree.is_tagged:
        raise ParameterError("tree has no parity tags")
    return Sign(tree.parity_tag[u] * tree.parity_tag[v])


def tree_distance(tree: RootedTree, u: int, v: int) -> int:
    """Number of edges on the tree path between two members."""
    parent, depth = tree.parent, tree.depth
    steps = 0
    while depth[u] > depth[v]:
        u = parent[u]
        steps += 1
    while depth[v] > depth[u]:
        v = parent[v]
        steps += 1
    while u != v:
        u = parent[u]
        v = parent[v]
        steps += 2
    return steps


def tree_path_edges(tree: RootedTree, u: int, v: int) -> list[int]:
    """Host edge ids on the tree path from ``u`` to ``v``, in path order."""
    parent, depth, tree_edge = tree.parent, tree.depth, tree.tree_edge
    head: list[int] = []
    tail: list[int] = []
    while depth[u] > depth[v]:
        head.append(tree_edge[u])
        u = parent[u]
    while depth[v] > depth[u]:
        tail.append(tree_edge[v])
        v = parent[v]
    while u != v:
        head.append(tree_edge[u])
        tail.append(tree_edge[v])
        u = parent[u]
        v = parent[v]
    return head + tail[::-1]


def bfs_distances(graph: SignedGraph, source: int) -> list[int]:
    """Unit-length distances from ``source``; -1 for unreachable nodes."""
    dist = [-1] * graph.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for nbr, _ in graph.adjacency[node]:
            if dist[nbr] < 0:
                dist[nbr] = dist[node] + 1
                queue.append(nbr)
    return dist


def ensure_connected(graph: SignedGraph) -> None:
    """
    Raises:
        DisconnectedGraphError: if some node is unreachable from node 0.
    """
    dist = bfs_distances(graph, 0)
    if -1 in dist:
        raise DisconnectedGraphError(dist.index(-1))


def graph_diameter(graph: SignedGraph) -> int:
    """
    Exact diameter by a BFS from every node. Quadratic; reporting use only.

    Raises:
        DisconnectedGraphError: if the graph is disconnected.
    """
    best = 0
    for source in range(graph.node_count):
        dist = bfs_distances(graph, source)
        if -1 in dist:
            raise DisconnectedGraphError(dist.index(-1))
        best = max(best, max(dist))
    return best
