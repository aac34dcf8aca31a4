"""
Tests for the F-measure and dataset statistics.
"""

import pytest

from core.metrics import f_measure, graph_stats, minority_class
from models.errors import ParameterError
from models.graph import Sign
from tests.helpers import complete_graph, make_graph, path_graph


def test_perfect_prediction():
    assert f_measure([-1, 1, 1], [-1, 1, 1]) == 1.0


def test_half_recall():
    assert f_measure([-1, 1, 1, 1], [-1, -1, 1, 1], Sign.NEGATIVE) == pytest.approx(2 / 3)


def test_all_positive_predictor_on_unbalanced_data():
    truth = [-1] * 2 + [1] * 8
    assert f_measure([1] * 10, truth, Sign.NEGATIVE) == 0.0


def test_positive_class_choice():
    assert f_measure([-1, 1, 1, 1], [-1, -1, 1, 1], Sign.POSITIVE) == pytest.approx(0.8)


def test_absent_class_scores_one():
    assert f_measure([1, 1], [1, 1], Sign.NEGATIVE) == 1.0


def test_length_mismatch():
    with pytest.raises(ParameterError):
        f_measure([1], [1, -1])
    with pytest.raises(ParameterError):
        f_measure([], [])


def test_minority_class():
    assert minority_class([1, 1, -1]) == Sign.NEGATIVE
    assert minority_class([-1, -1, 1]) == Sign.POSITIVE
    assert minority_class([-1, 1]) == Sign.NEGATIVE


def test_complete_graph_stats():
    graph = make_graph(4, complete_graph(4).edges, [1, -1, 1, -1, 1, 1])
    stats = graph_stats(graph)
    assert stats["nodes"] == 4 and stats["edges"] == 6
    assert stats["average_degree"] == pytest.approx(3.0)
    assert stats["negative_fraction"] == pytest.approx(2 / 6)
    assert stats["nodes_per_edge"] == pytest.approx(4 / 6)
    assert stats["diameter"] is None


def test_path_diameter_on_request():
    assert graph_stats(path_graph(5), with_diameter=True)["diameter"] == 4
