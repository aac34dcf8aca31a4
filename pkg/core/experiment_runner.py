"""
Seeded Monte Carlo experiments over one graph.

Each trial draws its own labels and learner randomness from streams split
off the master seed by trial index, so results do not depend on how trials
are scheduled across workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.constants import (
    ALGORITHM_SPANNING_TREE,
    ALGORITHM_STARMAKER,
    ALGORITHM_TREECUTTER,
    ALGORITHM_TREELETSTAR,
)
from core.bounds import check_bounds
from core.circuits import flip_bound
from core.edge_list import EdgeListLoader, load_clustering
from core.generator import generate_planted_graph
from core.labeling import (
    LabelAssignment,
    consistent_labels,
    labels_from_signs,
    lower_bound_mistakes,
    p_stochastic_flip,
)
from core.metrics import f_measure, minority_class
from core.oracle import LabelOracle
from core.starmaker import starmaker_run
from core.treecutter import spanning_tree_run, treecutter_run
from core.treeletstar import treeletstar_run
from models.errors import BoundViolationError, OracleError, ParameterError, SignQueryError
from models.experiment import ExperimentConfig, TrialResult
from models.graph import Sign, SignedGraph
from models.plan import PredictionRecord
from models.types import MetricSummary, SummaryData
from utils.logger import logger


def trial_generators(master_seed: int, trial_index: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Independent (labels, learner) generators for one trial."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    labels_seq, learner_seq = sequence.spawn(2)
    return np.random.default_rng(labels_seq), np.random.default_rng(learner_seq)


def run_learner(
    config: ExperimentConfig,
    graph: SignedGraph,
    oracle: LabelOracle,
    rng: np.random.Generator,
    root: Optional[int] = None,
) -> PredictionRecord:
    """Dispatch to the configured algorithm."""
    if config.algorithm == ALGORITHM_TREECUTTER:
        return treecutter_run(graph, oracle, config.k, rng, root, config.neighbor_order)
    if config.algorithm == ALGORITHM_STARMAKER:
        return starmaker_run(graph, oracle)
    if config.algorithm == ALGORITHM_TREELETSTAR:
        return treeletstar_run(graph, oracle, config.k, rng, root, config.neighbor_order)
    if config.algorithm == ALGORITHM_SPANNING_TREE:
        return spanning_tree_run(graph, oracle, rng, root, config.neighbor_order)
    raise ParameterError(f"unknown algorithm {config.algorithm!r}")


def _positive_class(config: ExperimentConfig, realized: np.ndarray) -> Sign:
    if config.positive_class == "minority":
        return minority_class(realized)
    return Sign.parse(config.positive_class)


def run_trial(
    config: ExperimentConfig,
    graph: SignedGraph,
    base: LabelAssignment,
    trial_index: int,
    root: Optional[int] = None,
) -> TrialResult:
    """
    Run one seeded trial and score it.

    Module errors and broken guarantees are caught, logged and recorded in
    the result rather than raised.
    """
    label_rng, learner_rng = trial_generators(config.master_seed, trial_index)
    start = time.perf_counter()
    try:
        labels = p_stochastic_flip(base, config.p, config.flip_mode, label_rng)
        oracle = LabelOracle(labels.realized)
        record = run_learner(config, graph.hidden(), oracle, learner_rng, root)
        record = record.score(labels.realized)
        elapsed = time.perf_counter() - start

        if oracle.reveals != record.query_count:
            raise OracleError(
                f"oracle revealed {oracle.reveals} labels for {record.query_count} planned queries"
            )
        violations = check_bounds(config.algorithm, graph, record, config.k)
        bound = flip_bound(graph, record.plan, labels.flipped) if labels.flipped_count else 0
        if record.mistakes > bound:
            violations.append(f"{record.mistakes} mistakes exceed the flip bound {bound}")
        if violations:
            raise BoundViolationError(violations)

        truth = labels.realized[list(record.test_edges)]
        score = (
            f_measure(record.predicted, truth, _positive_class(config, labels.realized))
            if record.test_count
            else 1.0
        )
        lower = lower_bound_mistakes(config.p, record.test_count)
        result = TrialResult(
            trial_index=trial_index,
            mistakes=record.mistakes,
            test_count=record.test_count,
            query_count=record.query_count,
            f_measure=score,
            max_circuit=record.max_circuit,
            mean_circuit=record.mean_circuit,
            elapsed=elapsed,
            optimality_factor=record.mistakes / max(1.0, lower),
            flipped_count=labels.flipped_count,
            flip_bound=bound,
            lower_bound=lower,
            diagnostics=dict(record.plan.diagnostics),
        )
    except SignQueryError as e:
        logger.warning(f"Trial {trial_index} failed: {e}")
        return TrialResult(trial_index=trial_index, elapsed=time.perf_counter() - start, error=str(e))

    logger.debug(
        f"Trial {trial_index}: {result.mistakes}/{result.test_count} mistakes, "
        f"{result.query_count} queries, F={result.f_measure:.4f}"
    )
    return result


# Per-process state for pooled trials; set once by the pool initializer.
_worker: dict = {}


def _init_worker(config: ExperimentConfig, graph: SignedGraph, base: LabelAssignment, root: Optional[int]) -> None:
    _worker.update(config=config, graph=graph, base=base, root=root)


def _pooled_trial(trial_index: int) -> TrialResult:
    return run_trial(_worker["config"], _worker["graph"], _worker["base"], trial_index, _worker["root"])


def _metric(values: list[float]) -> MetricSummary:
    if not values:
        return {"mean": 0.0, "std": 0.0}
    array = np.asarray(values, dtype=float)
    std = float(array.std(ddof=1)) if len(array) > 1 else 0.0
    return {"mean": float(array.mean()), "std": std}


@dataclass(frozen=True)
class ExperimentOutcome:
    """Trial results in index order plus their summary."""
    results: list[TrialResult]
    summary: SummaryData
    graph: SignedGraph

    @property
    def failed(self) -> bool:
        return bool(self.summary["failed_trials"])


class ExperimentRunner:
    """Prepares the graph of an experiment and runs its trials."""

    def __init__(
        self,
        config: ExperimentConfig,
        prepared: Optional[tuple[SignedGraph, LabelAssignment]] = None,
    ):
        """
        Initialize the runner.

        Args:
            config: A validated experiment configuration.
            prepared: Graph and base labels from an earlier ``prepare``, reused
                when sweeping parameters over one input.
        """
        self.config = config
        self.graph, self.base = prepared if prepared is not None else (None, None)

    def prepare(self) -> tuple[SignedGraph, LabelAssignment]:
        """
        Load or generate the graph and its unperturbed labels.

        Raises:
            SignQueryError: when the input cannot be read or generated.
            OSError: when an input file cannot be opened.
        """
        config = self.config
        if config.generator is not None:
            graph, clustering = generate_planted_graph(config.generator)
            base = consistent_labels(graph, clustering)
        else:
            graph = EdgeListLoader().load_file(config.input, config.largest_component)
            if config.clusters is not None:
                with open(config.clusters, "r", encoding="utf-8") as f:
                    base = consistent_labels(graph, load_clustering(f, graph))
            else:
                base = labels_from_signs(graph)
        self.graph, self.base = graph, base
        return graph, base

    def resolve_root(self, graph: SignedGraph) -> Optional[int]:
        """Dense id of the configured root token, if any."""
        if self.config.root is None:
            return None
        try:
            return graph.node_ids.index(self.config.root)
        except ValueError:
            raise ParameterError(f"root node {self.config.root!r} is not in the graph") from None

    def run(self) -> ExperimentOutcome:
        """Run every trial and summarise them."""
        graph, base = (self.graph, self.base) if self.graph is not None else self.prepare()
        root = self.resolve_root(graph)
        config = self.config
        indices = range(config.trials)
        logger.info(
            f"Running {config.trials} trials of {config.algorithm}"
            f"{f'(k={config.k})' if config.k else ''} at p={config.p} "
            f"on {graph.node_count} nodes, {graph.edge_count} edges"
        )

        if config.workers > 1:
            with ProcessPoolExecutor(
                max_workers=config.workers,
                initializer=_init_worker,
                initargs=(config, graph, base, root),
            ) as pool:
                results = list(pool.map(_pooled_trial, indices))
        else:
            results = [run_trial(config, graph, base, i, root) for i in indices]
        results.sort(key=lambda r: r.trial_index)

        summary = self.summarize(graph, results)
        if summary["failed_trials"]:
            logger.error(f"{len(summary['failed_trials'])} of {config.trials} trials failed")
        else:
            logger.info(
                f"Mean mistakes {summary['mistakes']['mean']:.3f}, "
                f"mean F {summary['f_measure']['mean']:.4f}, "
                f"query fraction {summary['query_fraction']:.4f}"
            )
        return ExperimentOutcome(results=results, summary=summary, graph=graph)

    def summarize(self, graph: SignedGraph, results: list[TrialResult]) -> SummaryData:
        """Mean and sample deviation of every metric over the successful trials."""
        ok = [r for r in results if not r.failed]
        diagnostics: dict[str, float] = {}
        for key in sorted({key for r in ok for key in (r.diagnostics or {})}):
            diagnostics[key] = float(np.mean([r.diagnostics[key] for r in ok if key in r.diagnostics]))
        return {
            "config": self.config.to_dict(),
            "node_count": graph.node_count,
            "edge_count": graph.edge_count,
            "trials": len(results),
            "failed_trials": [r.trial_index for r in results if r.failed],
            "mistakes": _metric([r.mistakes for r in ok]),
            "f_measure": _metric([r.f_measure for r in ok]),
            "optimality_factor": _metric([r.optimality_factor for r in ok]),
            "query_count": _metric([r.query_count for r in ok]),
            "flip_bound": _metric([r.flip_bound for r in ok]),
            "query_fraction": float(np.mean([r.query_fraction for r in ok])) if ok else 0.0,
            "max_circuit": max((r.max_circuit for r in ok), default=0),
            "mean_circuit": float(np.mean([r.mean_circuit for r in ok])) if ok else 0.0,
            "lower_bound": float(np.mean([r.lower_bound for r in ok])) if ok else 0.0,
            "diagnostics": diagnostics,
        }


def run_experiment(config: ExperimentConfig) -> ExperimentOutcome:
    """Run a whole experiment; see ``ExperimentRunner``."""
    return ExperimentRunner(config).run()
