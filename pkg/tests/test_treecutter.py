"""
Tests for treelet extraction, decomposition and the treeCutter learner.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.bounds import treecutter_query_bound
from core.oracle import LabelOracle
from core.spanning_tree import bfs_spanning_tree, graph_diameter, tree_distance
from core.treecutter import (
    decompose,
    density_precondition,
    extract_treelet,
    spanning_tree_run,
    treecutter_run,
)
from models.errors import DisconnectedGraphError, ParameterError
from tests.helpers import (
    brute_path_product,
    consistent_graph,
    make_graph,
    path_graph,
    random_connected_graph,
    random_tree,
)


def _oracle(graph):
    return LabelOracle(graph.labels)


def _descendants(tree, top, removed):
    found = [top]
    for node in found:
        found.extend(c for c in tree.children[node] if c not in removed)
    return found


def test_extract_treelet_on_path():
    tree = bfs_spanning_tree(path_graph(5), root=0)
    assert extract_treelet(tree, 2) == 2


def test_extract_treelet_returns_root_of_short_tree(k4):
    tree = bfs_spanning_tree(k4)
    assert extract_treelet(tree, 2) == tree.root


def test_extract_treelet_single_node():
    tree = bfs_spanning_tree(make_graph(1, []), root=0)
    assert extract_treelet(tree, 2) == 0


@pytest.mark.parametrize("k", [0, 1])
def test_k_below_two(k, path5):
    tree = bfs_spanning_tree(path5, root=0)
    with pytest.raises(ParameterError):
        extract_treelet(tree, k)
    with pytest.raises(ParameterError):
        decompose(tree, k)


def test_decompose_path_of_five():
    tree = bfs_spanning_tree(path_graph(5), root=0)
    decomposition = decompose(tree, 2)
    assert [set(t.nodes) for t in decomposition.treelets] == [{2, 3, 4}, {0, 1}]
    assert decomposition.owner == (1, 1, 0, 0, 0)
    assert decomposition.treelets[1].height == 1


def test_short_tree_is_one_treelet(rng):
    graph = random_connected_graph(30, 300, rng)
    tree = bfs_spanning_tree(graph)
    assert len(decompose(tree, max(2, tree.height))) == 1


@pytest.mark.parametrize("k", [2, 3, 5])
def test_decomposition_invariants(k):
    rng = np.random.default_rng(k)
    for _ in range(200):
        n = int(rng.integers(1, 201))
        tree = bfs_spanning_tree(random_tree(n, rng), root=int(rng.integers(n)))
        decomposition = decompose(tree, k)
        members = [v for t in decomposition.treelets for v in t.nodes]
        assert sorted(members) == list(range(n))
        assert all(t.height == k for t in decomposition.treelets[:-1])
        assert decomposition.treelets[-1].height <= k
        assert decomposition.treelets[-1].root == tree.root
        assert len(decomposition) <= (n - 1) / (k + 1) + 1
        for index, treelet in enumerate(decomposition.treelets):
            assert all(decomposition.owner[v] == index for v in treelet.nodes)


@given(st.integers(1, 80), st.integers(2, 6), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=100, deadline=None)
def test_decompose_matches_repeated_extraction(n, k, seed):
    rng = np.random.default_rng(seed)
    tree = bfs_spanning_tree(random_tree(n, rng), root=0)
    removed: set[int] = set()
    expected = []
    while len(removed) < n:
        top = extract_treelet(tree, k, removed)
        nodes = _descendants(tree, top, removed)
        expected.append(nodes)
        removed.update(nodes)
    assert [list(t.nodes) for t in decompose(tree, k).treelets] == expected


def test_treelet_diameter_at_most_2k():
    rng = np.random.default_rng(77)
    for _ in range(50):
        tree = bfs_spanning_tree(random_tree(60, rng), root=0)
        for treelet in decompose(tree, 3).treelets:
            for u in treelet.nodes:
                for v in treelet.nodes:
                    assert tree_distance(treelet, u, v) <= 6


def test_cycle_with_large_k(cycle6):
    record = treecutter_run(cycle6, _oracle(cycle6), 3, np.random.default_rng(0), root=0, neighbor_order="input")
    assert record.query_count == 5
    assert record.test_count == 1
    assert list(record.circuit_length) == [5]


def test_consistent_labels_give_no_mistakes(rng):
    graph, _ = consistent_graph(80, 400, rng)
    for k in (2, 3, 5):
        record = treecutter_run(graph.hidden(), _oracle(graph), k, rng).score(graph.labels)
        assert record.mistakes == 0


def test_bounds_on_random_graphs():
    rng = np.random.default_rng(60)
    for _ in range(100):
        graph = random_connected_graph(60, 600, rng)
        oracle = _oracle(graph)
        record = treecutter_run(graph.hidden(), oracle, 3, rng)
        assert record.max_circuit <= 13
        assert record.query_count <= 269
        assert record.query_count <= treecutter_query_bound(60, 3)
        assert oracle.reveals == record.query_count
        assert record.query_count + record.test_count == graph.edge_count


def test_circuits_never_exceed_twice_the_diameter():
    rng = np.random.default_rng(300)
    for _ in range(100):
        n = int(rng.integers(10, 301))
        graph = random_connected_graph(n, int(rng.integers(n - 1, 4 * n)), rng)
        # a BFS tree height is an eccentricity, a lower bound on the diameter
        diameter = bfs_spanning_tree(graph).height
        exact = False
        for k in (2, 3, 5):
            record = treecutter_run(graph.hidden(), _oracle(graph), k, rng)
            if record.max_circuit > 2 * diameter and not exact:
                diameter, exact = graph_diameter(graph), True
            assert record.max_circuit <= min(4 * k + 1, 2 * diameter)
            assert record.query_count <= treecutter_query_bound(n, k)


def test_dense_graphs_query_at_most_half(rng):
    graph = random_connected_graph(60, 1500, rng)
    assert density_precondition(60, graph.edge_count, 3)
    record = treecutter_run(graph.hidden(), _oracle(graph), 3, rng)
    assert record.query_count <= graph.edge_count / 2


def test_each_treelet_pair_gets_one_connector(rng):
    graph = random_connected_graph(70, 500, rng)
    record = treecutter_run(graph.hidden(), _oracle(graph), 2, rng)
    plan = record.plan
    pairs = {}
    for edge_id in plan.query_edges:
        u, v = graph.edges[edge_id]
        a, b = plan.owner[u], plan.owner[v]
        if a != b:
            key = (min(a, b), max(a, b))
            assert key not in pairs
            pairs[key] = edge_id
    for edge_id, (u, v) in enumerate(graph.edges):
        a, b = plan.owner[u], plan.owner[v]
        if a != b:
            assert (min(a, b), max(a, b)) in pairs


def test_run_is_deterministic(rng):
    graph = random_connected_graph(50, 300, rng)
    a = treecutter_run(graph.hidden(), _oracle(graph), 3, np.random.default_rng(4))
    b = treecutter_run(graph.hidden(), _oracle(graph), 3, np.random.default_rng(4))
    assert a.same_as(b)


def test_large_k_degrades_to_spanning_tree(rng):
    graph = random_connected_graph(40, 300, rng)
    a = treecutter_run(graph.hidden(), _oracle(graph), 40, np.random.default_rng(9))
    b = spanning_tree_run(graph.hidden(), _oracle(graph), np.random.default_rng(9))
    assert a.same_as(b)
    assert a.query_count == graph.node_count - 1


def test_spanning_tree_only_matches_tree_parity(rng):
    graph = random_connected_graph(30, 90, rng)
    record = spanning_tree_run(graph.hidden(), _oracle(graph), rng, neighbor_order="input")
    tree = record.plan.blocks[0]
    assert record.query_count == 29
    for edge_id, predicted in zip(record.test_edges, record.predicted):
        u, v = graph.edges[edge_id]
        assert predicted == brute_path_product(graph, tree, u, v)


def test_disconnected_graph():
    graph = make_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        treecutter_run(graph.hidden(), _oracle(graph), 2, np.random.default_rng(0))


def test_partition_covers_every_edge_once(rng):
    graph = random_connected_graph(20, 50, rng)
    record = treecutter_run(graph.hidden(), _oracle(graph), 2, rng)
    queries, tests = set(record.plan.query_edges), set(record.test_edges)
    assert not queries & tests
    assert queries | tests == set(range(graph.edge_count))
