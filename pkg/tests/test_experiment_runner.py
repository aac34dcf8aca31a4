"""
Tests for seeded experiments, summaries and result files.
"""

import math
import time

import numpy as np
import pytest

from config.constants import ALL_ALGORITHMS, CSV_COLUMNS, SIGMA_MARGIN
from core.edge_list import dump_edge_list
from core.experiment_runner import ExperimentRunner, run_experiment, run_trial, trial_generators
from core.generator import generate_planted_graph
from core.labeling import consistent_labels
from core.oracle import LabelOracle
from core.results_store import ResultStore, trial_row
from core.treecutter import treecutter_run
from models.errors import ParameterError
from models.experiment import ExperimentConfig, GeneratorSpec
from tests.helpers import make_graph

SMALL = GeneratorSpec(n=60, target_edges=240, negative_fraction_target=0.25, seed=4)


def config(algorithm="treecutter", **overrides):
    values = dict(algorithm=algorithm, k=2 if algorithm in ("treecutter", "treeletstar") else None,
                  trials=5, generator=SMALL)
    values.update(overrides)
    return ExperimentConfig(**values)


def test_trial_generators_are_independent_streams():
    a_labels, a_learner = trial_generators(7, 0)
    b_labels, _ = trial_generators(7, 1)
    c_labels, _ = trial_generators(7, 0)
    first = a_labels.random(4)
    assert not np.allclose(first, a_learner.random(4))
    assert not np.allclose(first, b_labels.random(4))
    assert np.allclose(first, c_labels.random(4))


@pytest.mark.parametrize("algorithm", ALL_ALGORITHMS)
def test_no_noise_means_no_mistakes(algorithm):
    outcome = run_experiment(config(algorithm))
    assert not outcome.failed
    for result in outcome.results:
        assert result.mistakes == 0
        assert result.f_measure == 1.0
        assert result.flipped_count == 0
        assert result.query_count + result.test_count == 240
    assert outcome.summary["mistakes"] == {"mean": 0.0, "std": 0.0}


def test_trial_counts_and_diagnostics():
    outcome = run_experiment(config("treeletstar", p=0.1, trials=8))
    assert [r.trial_index for r in outcome.results] == list(range(8))
    summary = outcome.summary
    assert summary["trials"] == 8
    assert summary["failed_trials"] == []
    assert summary["node_count"] == 60 and summary["edge_count"] == 240
    assert "treelets" in summary["diagnostics"]
    assert "starmaker_queries" in summary["diagnostics"]
    for result in outcome.results:
        assert result.mistakes <= result.flip_bound or result.flipped_count == 0
        assert result.lower_bound == pytest.approx(0.1 * result.test_count)


def test_identical_runs_write_identical_files(tmp_path):
    paths = []
    for name in ("a", "b"):
        outcome = run_experiment(config("treecutter", p=0.1, trials=6))
        store = ResultStore(tmp_path / name)
        paths.append((store.save_trials(outcome.results), store.save_summary(outcome.summary)))
    for first, second in zip(*paths):
        assert first.read_bytes() == second.read_bytes()


def test_csv_layout(tmp_path):
    outcome = run_experiment(config("starmaker", p=0.05, trials=3))
    path = ResultStore(tmp_path / "run").save_trials(outcome.results)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 4
    assert lines[1].split(",")[CSV_COLUMNS.index("elapsed_ms")] == "0"


def test_pooled_trials_match_serial_trials():
    serial = run_experiment(config("treecutter", p=0.1, trials=6))
    pooled = run_experiment(config("treecutter", p=0.1, trials=6, workers=2))
    assert [trial_row(r, False) for r in serial.results] == [trial_row(r, False) for r in pooled.results]


def test_trial_results_do_not_depend_on_order():
    cfg = config("treeletstar", p=0.2, trials=4)
    graph, clustering = generate_planted_graph(SMALL)
    base = consistent_labels(graph, clustering)
    forward = [run_trial(cfg, graph, base, i) for i in range(4)]
    backward = [run_trial(cfg, graph, base, i) for i in reversed(range(4))][::-1]
    assert [trial_row(r, False) for r in forward] == [trial_row(r, False) for r in backward]


def test_disconnected_input_records_failed_trials(tmp_path):
    path = tmp_path / "two.edges.txt"
    path.write_text("0 1 +1\n1 2 -1\n3 4 +1\n")
    outcome = run_experiment(config("treecutter", generator=None, input=str(path), trials=2))
    assert outcome.failed
    assert outcome.summary["failed_trials"] == [0, 1]
    assert all("connected" in r.error for r in outcome.results)
    assert ResultStore(tmp_path / "out").save_trials(outcome.results).read_text().count("\n") == 1


def test_largest_component_rescues_disconnected_input(tmp_path):
    path = tmp_path / "two.edges.txt"
    path.write_text("0 1 +1\n1 2 -1\n2 0 -1\n3 4 +1\n")
    outcome = run_experiment(config("starmaker", generator=None, input=str(path), largest_component=True))
    assert not outcome.failed
    assert outcome.summary["node_count"] == 3


def test_clustering_sidecar_gives_base_labels(tmp_path):
    graph = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [1, -1, 1, -1])
    (tmp_path / "g.edges.txt").write_text(dump_edge_list(graph))
    (tmp_path / "g.clusters.txt").write_text("0 0\n1 0\n2 1\n3 1\n")
    runner = ExperimentRunner(config(
        "spanning-tree-only", generator=None,
        input=str(tmp_path / "g.edges.txt"), clusters=str(tmp_path / "g.clusters.txt"),
    ))
    _, base = runner.prepare()
    assert list(base.consistent) == [1, -1, 1, -1]


def test_root_token_is_resolved(tmp_path):
    path = tmp_path / "g.edges.txt"
    path.write_text("a b +1\nb c +1\nc a -1\n")
    runner = ExperimentRunner(config("treecutter", generator=None, input=str(path), root="c"))
    graph, _ = runner.prepare()
    assert runner.resolve_root(graph) == 2
    missing = ExperimentRunner(config("treecutter", generator=None, input=str(path), root="z"))
    with pytest.raises(ParameterError):
        missing.resolve_root(graph)


def test_reveals_match_query_count():
    outcome = run_experiment(config("treeletstar", p=0.1, trials=3))
    graph = outcome.graph
    oracle = LabelOracle(graph.labels)
    record = treecutter_run(graph.hidden(), oracle, 2, np.random.default_rng(0))
    assert oracle.reveals == record.query_count


def test_k_sweep_reuses_prepared_graph():
    first = ExperimentRunner(config("treecutter", k=2, p=0.1))
    a = first.run()
    second = ExperimentRunner(config("treecutter", k=3, p=0.1), (first.graph, first.base))
    b = second.run()
    assert second.graph is first.graph
    assert a.summary["edge_count"] == b.summary["edge_count"]


def _differences(results, p: float, upper: bool) -> np.ndarray:
    if upper:
        # longest circuit over all trials
        ell = max(r.max_circuit for r in results)
        return np.array([ell * p * r.test_count - r.mistakes for r in results])
    return np.array([r.mistakes - p * r.test_count for r in results])


@pytest.mark.slow
@pytest.mark.parametrize("algorithm", ALL_ALGORITHMS)
def test_monte_carlo_mistakes_between_bounds(algorithm):
    spec = GeneratorSpec(n=100, target_edges=800, negative_fraction_target=0.2, seed=11)
    outcome = run_experiment(config(algorithm, k=3 if algorithm in ("treecutter", "treeletstar") else None,
                                    generator=spec, p=0.05, trials=500))
    assert not outcome.failed
    trials = len(outcome.results)
    for upper in (False, True):
        diffs = _differences(outcome.results, 0.05, upper)
        margin = SIGMA_MARGIN * diffs.std(ddof=1) / math.sqrt(trials)
        assert diffs.mean() >= -margin


def _median_runtime(graph, repeats=3) -> float:
    times = []
    for seed in range(repeats):
        start = time.perf_counter()
        treecutter_run(graph.hidden(), LabelOracle(graph.labels), 3, np.random.default_rng(seed))
        times.append(time.perf_counter() - start)
    return float(np.median(times))


@pytest.mark.slow
def test_treecutter_scales_linearly():
    small, _ = generate_planted_graph(GeneratorSpec(n=10_000, target_edges=40_000, seed=1))
    large, _ = generate_planted_graph(GeneratorSpec(n=20_000, target_edges=80_000, seed=1))
    assert _median_runtime(large) / _median_runtime(small) <= 2.5
