"""
Type definitions for SignQuery output files.
"""

from typing import Optional, TypedDict


class TrialRow(TypedDict):
    """One row of the per-trial CSV file."""
    trial: int
    mistakes: int
    test_count: int
    query_count: int
    f_measure: str
    max_circuit: int
    mean_circuit: str
    elapsed_ms: str
    optimality_factor: str


class MetricSummary(TypedDict):
    """Mean and sample standard deviation of one per-trial metric."""
    mean: float
    std: float


class SummaryData(TypedDict):
    """Body of the summary JSON file."""
    config: dict
    node_count: int
    edge_count: int
    trials: int
    failed_trials: list[int]
    mistakes: MetricSummary
    f_measure: MetricSummary
    optimality_factor: MetricSummary
    query_count: MetricSummary
    flip_bound: MetricSummary
    query_fraction: float
    max_circuit: int
    mean_circuit: float
    lower_bound: float
    diagnostics: dict


class GraphStatsData(TypedDict):
    """One row of the dataset statistics table."""
    nodes: int
    edges: int
    negative_fraction: float
    nodes_per_edge: float
    average_degree: float
    diameter: Optional[int]


class LabelSidecarData(TypedDict):
    """Provenance of a generated label assignment."""
    p: float
    mode: str
    seed: int
    flipped_count: int
