"""
Graph builders and brute-force oracles shared by the tests.
"""

from typing import Optional, Sequence

import networkx as nx
import numpy as np
from hypothesis import strategies as st

from core.labeling import TwoClustering, consistent_labels
from models.graph import RootedTree, SignedGraph


def make_graph(n: int, pairs: Sequence[tuple[int, int]], signs: Optional[Sequence[int]] = None) -> SignedGraph:
    return SignedGraph.from_edges(n, pairs, signs if signs is not None else [1] * len(pairs))


def path_graph(n: int, signs: Optional[Sequence[int]] = None) -> SignedGraph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)], signs)


def cycle_graph(n: int) -> SignedGraph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> SignedGraph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(n: int) -> SignedGraph:
    """Centre 0 joined to ``n - 1`` leaves."""
    return make_graph(n, [(0, v) for v in range(1, n)])


def random_connected_graph(n: int, m: int, rng: np.random.Generator, signed: bool = True) -> SignedGraph:
    """Random spanning tree plus uniformly random extra edges, in shuffled order."""
    order = rng.permutation(n)
    pairs: set[tuple[int, int]] = set()
    for i in range(1, n):
        u, v = int(order[i]), int(order[rng.integers(i)])
        pairs.add((min(u, v), max(u, v)))
    target = min(max(m, n - 1), n * (n - 1) // 2)
    while len(pairs) < target:
        for u, v in rng.integers(0, n, size=(2 * (target - len(pairs)) + 8, 2)):
            if u != v:
                pairs.add((int(min(u, v)), int(max(u, v))))
                if len(pairs) == target:
                    break
    edges = sorted(pairs)
    edges = [edges[i] for i in rng.permutation(len(edges))]
    labels = rng.choice(np.array([-1, 1]), size=len(edges)) if signed else None
    return SignedGraph.from_edges(n, edges, labels)


def random_tree(n: int, rng: np.random.Generator) -> SignedGraph:
    return random_connected_graph(n, n - 1, rng)


def consistent_graph(n: int, m: int, rng: np.random.Generator) -> tuple[SignedGraph, TwoClustering]:
    """Random connected graph carrying the consistent labels of a random clustering."""
    graph = random_connected_graph(n, m, rng, signed=False)
    clustering = TwoClustering.uniform(n, rng)
    return graph.with_labels(consistent_labels(graph, clustering).realized), clustering


@st.composite
def connected_graphs(draw, min_nodes: int = 2, max_nodes: int = 30, max_density: int = 4) -> SignedGraph:
    """Hypothesis strategy: random connected graphs with random signs."""
    n = draw(st.integers(min_nodes, max_nodes))
    m = draw(st.integers(n - 1, max(n - 1, min(n * (n - 1) // 2, max_density * n))))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_connected_graph(n, m, np.random.default_rng(seed))


def tree_as_networkx(tree: RootedTree, graph: SignedGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_node(tree.root)
    for edge_id in tree.edges:
        u, v = graph.edges[edge_id]
        g.add_edge(u, v, id=edge_id)
    return g


def brute_path_product(graph: SignedGraph, tree: RootedTree, u: int, v: int) -> int:
    """Sign product along the explicit tree path, found by networkx."""
    g = tree_as_networkx(tree, graph)
    path = nx.shortest_path(g, u, v)
    product = 1
    for a, b in zip(path, path[1:]):
        product *= int(graph.labels[g.edges[a, b]["id"]])
    return product


def is_walk(graph: SignedGraph, edge_ids: Sequence[int], start: int, end: int) -> bool:
    """Whether the edges, in order, form a walk from ``start`` to ``end``."""
    here = start
    for edge_id in edge_ids:
        a, b = graph.edges[edge_id]
        if here == a:
            here = b
        elif here == b:
            here = a
        else:
            return False
    return here == end
