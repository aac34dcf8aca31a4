"""
Experiment configuration and per-trial results.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Optional

from config.constants import (
    ALL_ALGORITHMS,
    ALL_FLIP_MODES,
    DEFAULT_MASTER_SEED,
    DEFAULT_POSITIVE_CLASS,
    DEFAULT_TRIALS,
    FLIP_MODE_IID,
    MAX_FLIP_PROBABILITY,
    MIN_K,
    NEIGHBOR_ORDER_INPUT,
    NEIGHBOR_ORDER_SHUFFLED,
    PARAMETERISED_ALGORITHMS,
)
from models.errors import ParameterError


@dataclass(frozen=True)
class GeneratorSpec:
    """Planted-partition graph generator parameters."""
    n: int
    target_edges: int
    cluster_split: float = 0.5
    negative_fraction_target: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if self.target_edges < self.n - 1:
            raise ParameterError(f"target_edges must be at least n-1 = {self.n - 1}")
        if self.target_edges > self.n * (self.n - 1) // 2:
            raise ParameterError("target_edges exceeds the number of node pairs")
        if not 0.0 <= self.cluster_split <= 1.0:
            raise ParameterError("cluster_split must lie in [0, 1]")
        if not 0.0 <= self.negative_fraction_target <= 1.0:
            raise ParameterError("negative_fraction_target must lie in [0, 1]")


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One Monte Carlo experiment.

    Exactly one of ``input`` (edge-list path) and ``generator`` must be set.
    ``clusters`` optionally names a clustering sidecar for ``input``; its
    consistent labels then serve as the unperturbed ground truth. ``root``
    is a node token as written in the input.
    The config is validated on construction and stored verbatim in the
    summary file.
    """
    algorithm: str
    p: float = 0.0
    k: Optional[int] = None
    flip_mode: str = FLIP_MODE_IID
    trials: int = DEFAULT_TRIALS
    master_seed: int = DEFAULT_MASTER_SEED
    input: Optional[str] = None
    generator: Optional[GeneratorSpec] = None
    output: Optional[str] = None
    positive_class: str = DEFAULT_POSITIVE_CLASS
    neighbor_order: str = NEIGHBOR_ORDER_SHUFFLED
    root: Optional[str] = None
    clusters: Optional[str] = None
    largest_component: bool = False
    workers: int = 1
    timing: bool = False

    def __post_init__(self) -> None:
        if self.algorithm not in ALL_ALGORITHMS:
            raise ParameterError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm in PARAMETERISED_ALGORITHMS:
            if self.k is None or self.k < MIN_K:
                raise ParameterError(f"{self.algorithm} needs k >= {MIN_K}")
        if not 0.0 <= self.p < MAX_FLIP_PROBABILITY:
            raise ParameterError("p must lie in [0, 1/2)")
        if self.flip_mode not in ALL_FLIP_MODES:
            raise ParameterError(f"unknown flip mode {self.flip_mode!r}")
        if self.trials < 1:
            raise ParameterError("trials must be at least 1")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ParameterError("master_seed must be a 64-bit unsigned integer")
        if (self.input is None) == (self.generator is None):
            raise ParameterError("set exactly one of input and generator")
        if self.clusters is not None and self.input is None:
            raise ParameterError("clusters needs an input edge list")
        if self.positive_class not in ("minority", "-1", "+1"):
            raise ParameterError("positive_class must be minority, -1 or +1")
        if self.neighbor_order not in (NEIGHBOR_ORDER_INPUT, NEIGHBOR_ORDER_SHUFFLED):
            raise ParameterError(f"unknown neighbor order {self.neighbor_order!r}")
        if self.workers < 1:
            raise ParameterError("workers must be at least 1")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one seeded trial."""
    trial_index: int
    mistakes: int = 0
    test_count: int = 0
    query_count: int = 0
    f_measure: float = 0.0
    max_circuit: int = 0
    mean_circuit: float = 0.0
    elapsed: float = 0.0
    optimality_factor: float = 0.0
    flipped_count: int = 0
    flip_bound: int = 0
    lower_bound: float = 0.0
    diagnostics: Optional[dict[str, float]] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    @property
    def query_fraction(self) -> float:
        total = self.query_count + self.test_count
        return self.query_count / total if total else 0.0
