"""
Data models for SignQuery.
"""

from .errors import (
    BoundViolationError,
    ConflictingEdgeError,
    DisconnectedGraphError,
    EdgeListError,
    EmptyGraphError,
    InfeasibleSpecError,
    OracleError,
    ParameterError,
    SignQueryError,
)
from .graph import EdgePartition, RootedTree, Sign, SignedGraph
from .plan import NO_CONNECTOR, PredictionRecord, QueryPlan
from .decomposition import ContractionGraph, Star, StarDecomposition, StarOfTreelets, TreeletDecomposition
from .experiment import ExperimentConfig, GeneratorSpec, TrialResult
from .types import GraphStatsData, LabelSidecarData, MetricSummary, SummaryData, TrialRow
