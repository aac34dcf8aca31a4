"""
Prediction quality and dataset statistics.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.metrics import f1_score

from core.spanning_tree import graph_diameter
from models.errors import ParameterError
from models.graph import Sign, SignedGraph
from models.types import GraphStatsData


def minority_class(truth: Sequence[int]) -> Sign:
    """The rarer sign; negative on ties."""
    truth = np.asarray(truth)
    negatives = int(np.count_nonzero(truth < 0))
    return Sign.NEGATIVE if negatives <= len(truth) - negatives else Sign.POSITIVE


def f_measure(
    predicted: Sequence[int],
    truth: Sequence[int],
    positive_class: Sign = Sign.NEGATIVE,
) -> float:
    """
    F-measure of the predictions for one designated class.

    Harmonic mean of precision and recall; 0 when both vanish. When the class
    occurs neither in ``truth`` nor in ``predicted`` the predictions are
    perfect for it and the score is 1.

    Raises:
        ParameterError: on empty or misaligned inputs.
    """
    if len(predicted) != len(truth):
        raise ParameterError(f"length mismatch: {len(predicted)} predictions, {len(truth)} labels")
    if len(truth) == 0:
        raise ParameterError("f_measure needs at least one edge")
    return float(
        f1_score(
            np.asarray(truth, dtype=np.int8),
            np.asarray(predicted, dtype=np.int8),
            labels=[-1, 1],
            pos_label=int(positive_class),
            average="binary",
            zero_division=1.0,
        )
    )


def graph_stats(graph: SignedGraph, with_diameter: bool = False) -> GraphStatsData:
    """One row of the dataset statistics table."""
    n, m = graph.node_count, graph.edge_count
    return {
        "nodes": n,
        "edges": m,
        "negative_fraction": graph.negative_fraction,
        "nodes_per_edge": n / m if m else 0.0,
        "average_degree": 2 * m / n,
        "diameter": graph_diameter(graph) if with_diameter else None,
    }
