"""
Tests for planted clusterings and p-stochastic label perturbation.
"""

import itertools
import math

import networkx as nx
import numpy as np
import pytest

from core.edge_list import to_networkx
from core.labeling import (
    TwoClustering,
    consistent_labels,
    flip_exactly,
    labels_from_signs,
    lower_bound_mistakes,
    p_stochastic_flip,
)
from models.errors import ParameterError
from tests.helpers import complete_graph, consistent_graph, make_graph, random_connected_graph


def test_single_cluster_is_all_positive(rng):
    graph = random_connected_graph(20, 50, rng, signed=False)
    labels = consistent_labels(graph, TwoClustering.from_sides([0] * 20))
    assert np.all(labels.realized == 1)
    assert labels.flipped_count == 0


def test_k4_split_two_two():
    labels = consistent_labels(complete_graph(4), TwoClustering.from_sides([0, 0, 1, 1]))
    assert int(np.count_nonzero(labels.realized == 1)) == 2
    assert int(np.count_nonzero(labels.realized == -1)) == 4


def test_clustering_must_cover_graph(k4):
    with pytest.raises(ParameterError):
        consistent_labels(k4, TwoClustering.from_sides([0, 1]))


def test_fixed_split_sizes(rng):
    clustering = TwoClustering.fixed_split(10, 0.3, rng)
    assert int(np.count_nonzero(clustering.side == 0)) == 3


def test_triangles_are_balanced():
    rng = np.random.default_rng(5)
    for _ in range(100):
        graph, _ = consistent_graph(15, 40, rng)
        g = to_networkx(graph)
        for triangle in (c for c in nx.enumerate_all_cliques(g) if len(c) == 3):
            product = 1
            for u, v in itertools.combinations(triangle, 2):
                product *= g.edges[u, v]["sign"]
            assert product == 1


def test_every_simple_path_has_the_edge_sign():
    rng = np.random.default_rng(8)
    for _ in range(20):
        graph, _ = consistent_graph(8, 14, rng)
        g = to_networkx(graph)
        for edge_id, (u, v) in enumerate(graph.edges):
            for path in nx.all_simple_paths(g, u, v):
                product = math.prod(g.edges[a, b]["sign"] for a, b in zip(path, path[1:]))
                assert product == graph.labels[edge_id]


def test_zero_flip_probability_is_identity(rng):
    graph, _ = consistent_graph(30, 90, rng)
    base = labels_from_signs(graph)
    for mode in ("iid", "fact1"):
        flipped = p_stochastic_flip(base, 0.0, mode, rng)
        assert np.array_equal(flipped.realized, base.realized)
        assert flipped.flipped_count == 0


@pytest.mark.parametrize("p", [-0.1, 0.5, 0.7])
def test_flip_probability_range(p, rng):
    base = labels_from_signs(complete_graph(4))
    with pytest.raises(ParameterError):
        p_stochastic_flip(base, p, "iid", rng)


def test_unknown_mode(rng):
    with pytest.raises(ParameterError):
        p_stochastic_flip(labels_from_signs(complete_graph(4)), 0.1, "burst", rng)


def test_realized_is_consistent_times_flip(rng):
    graph, clustering = consistent_graph(50, 200, rng)
    base = consistent_labels(graph, clustering)
    for mode in ("iid", "fact1"):
        labels = p_stochastic_flip(base, 0.2, mode, rng)
        assert labels.base is clustering
        assert np.array_equal(labels.realized, np.where(labels.flipped, -base.realized, base.realized))


def test_iid_flip_rate():
    base = labels_from_signs(random_connected_graph(2000, 10000, np.random.default_rng(1)))
    m, p, seeds = 10000, 0.1, 100
    rates = [p_stochastic_flip(base, p, "iid", np.random.default_rng(s)).flipped_count / m for s in range(seeds)]
    sigma = math.sqrt(p * (1 - p) / (m * seeds))
    assert abs(np.mean(rates) - p) < 3 * sigma


def test_fact1_selects_two_p_edges():
    base = labels_from_signs(random_connected_graph(300, 1000, np.random.default_rng(2)))
    counts = []
    for seed in range(200):
        labels = p_stochastic_flip(base, 0.1, "fact1", np.random.default_rng(seed))
        assert labels.selected_count == 200
        assert labels.flipped_count <= 200
        counts.append(labels.flipped_count)
    # each selected edge flips with probability 1/2
    assert abs(np.mean(counts) - 100) < 3 * math.sqrt(50 / 200)


def test_iid_flips_are_independent():
    base = labels_from_signs(make_graph(3, [(0, 1), (1, 2)]))
    table = np.zeros((2, 2))
    for seed in range(10000):
        flipped = p_stochastic_flip(base, 0.3, "iid", np.random.default_rng(seed)).flipped
        table[int(flipped[0]), int(flipped[1])] += 1
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / table.sum()
    chi2 = float(((table - expected) ** 2 / expected).sum())
    assert chi2 < 6.635  # one degree of freedom, significance 0.01


def test_flip_is_seeded(rng):
    base = labels_from_signs(random_connected_graph(40, 100, rng))
    a = p_stochastic_flip(base, 0.2, "iid", np.random.default_rng(3))
    b = p_stochastic_flip(base, 0.2, "iid", np.random.default_rng(3))
    assert np.array_equal(a.realized, b.realized)
    assert np.array_equal(a.flipped, b.flipped)


def test_flip_exactly(rng):
    base = labels_from_signs(random_connected_graph(40, 100, rng))
    labels = flip_exactly(base, 17, rng)
    assert labels.flipped_count == 17
    with pytest.raises(ParameterError):
        flip_exactly(base, 101, rng)


@pytest.mark.parametrize("p, test_count, expected", [(0.0, 100, 0.0), (0.1, 1000, 100.0)])
def test_lower_bound(p, test_count, expected):
    assert lower_bound_mistakes(p, test_count) == pytest.approx(expected)


def test_odd_flip_probability_is_at_least_p():
    # A test edge is mispredicted iff its circuit carries an odd number of flips.
    for p in (0.01, 0.1, 0.25, 0.4, 0.49):
        for length in range(2, 9):
            exact = 0.0
            for pattern in itertools.product((0, 1), repeat=length):
                if sum(pattern) % 2:
                    exact += p ** sum(pattern) * (1 - p) ** (length - sum(pattern))
            assert exact == pytest.approx((1 - (1 - 2 * p) ** length) / 2)
            assert exact >= p - 1e-12
