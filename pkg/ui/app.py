"""
Command-line application for SignQuery.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import NoReturn, Optional, Sequence

import numpy as np

from config.constants import (
    ALL_ALGORITHMS,
    ALL_FLIP_MODES,
    DEFAULT_K,
    DEFAULT_MASTER_SEED,
    DEFAULT_POSITIVE_CLASS,
    DEFAULT_TRIALS,
    EDGES_FILE_SUFFIX,
    EXIT_OK,
    EXIT_TRIAL_FAILURE,
    EXIT_USAGE,
    FLIP_MODE_IID,
    NEIGHBOR_ORDER_INPUT,
    NEIGHBOR_ORDER_SHUFFLED,
    PARAMETERISED_ALGORITHMS,
    SIMILARITY_THRESHOLD,
)
from config.settings import OUTPUT_DIR, WORKERS
from core.edge_list import EdgeListLoader, LoadReport, dump_clustering, dump_edge_list
from core.experiment_runner import ExperimentRunner
from core.generator import clean_directed_snapshot, generate_planted_graph, similarity_graph_from_ratings
from core.labeling import consistent_labels, flip_exactly, p_stochastic_flip
from core.metrics import graph_stats
from core.results_store import ResultStore
from models.errors import ParameterError, SignQueryError
from models.experiment import ExperimentConfig, GeneratorSpec
from models.types import LabelSidecarData
from ui.components import format_load_report, format_stats_table, format_summary
from utils.logger import logger, set_level


class UsageError(Exception):
    """Raised by the parser instead of exiting, so the app owns exit codes."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


class SignQueryApp:
    """
    The ``signquery`` command line.

    Subcommands ``generate``, ``clean``, ``ratings``, ``stats`` and ``run``;
    each handler returns a process exit status.
    """

    def __init__(self) -> None:
        """Initialize the application and its argument parser."""
        self.parser = self.build_parser()

    def build_parser(self) -> argparse.ArgumentParser:
        """Set up the argument parser and its subcommands."""
        parser = _Parser(
            prog="signquery",
            description="Active learning of edge signs in signed graphs.",
        )
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
        verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings and errors only")
        commands = parser.add_subparsers(dest="command", required=True)

        generate = commands.add_parser("generate", help="Generate a planted-partition signed graph")
        generate.add_argument("--n", type=int, required=True, help="Number of nodes")
        generate.add_argument("--edges", type=int, required=True, help="Number of edges")
        generate.add_argument("--split", type=float, default=0.5, help="Fraction of nodes in cluster 0")
        generate.add_argument("--negative-fraction", type=float, default=0.2,
                              help="Target fraction of negative edges")
        generate.add_argument("--seed", type=int, default=0, help="Generator seed")
        flips = generate.add_mutually_exclusive_group()
        flips.add_argument("--p", type=float, default=0.0, help="Flip probability of the written labels")
        flips.add_argument("--flip-count", type=int, help="Flip exactly this many labels")
        generate.add_argument("--mode", choices=ALL_FLIP_MODES, default=FLIP_MODE_IID, help="Flip mode for --p")
        generate.add_argument("--output", help="Output path prefix")
        generate.set_defaults(handler=self.cmd_generate)

        clean = commands.add_parser("clean", help="Clean a directed signed snapshot")
        clean.add_argument("input", help="Directed edge-list file")
        clean.add_argument("--output", help="Output path prefix")
        clean.set_defaults(handler=self.cmd_clean)

        ratings = commands.add_parser("ratings", help="Build a signed user similarity graph from ratings")
        ratings.add_argument("input", help="Ratings file (user::item::rating or CSV)")
        ratings.add_argument("--threshold", type=float, default=SIMILARITY_THRESHOLD,
                             help="Drop pairs whose absolute cosine similarity is below this")
        ratings.add_argument("--output", help="Output path prefix")
        ratings.set_defaults(handler=self.cmd_ratings)

        stats = commands.add_parser("stats", help="Print dataset statistics")
        stats.add_argument("inputs", nargs="+", help="Edge-list files")
        stats.add_argument("--diameter", action="store_true", help="Also compute the exact diameter")
        stats.add_argument("--largest-component", action="store_true",
                           help="Restrict to the largest connected component")
        stats.add_argument("--json", action="store_true", help="Print JSON instead of a table")
        stats.set_defaults(handler=self.cmd_stats)

        run = commands.add_parser("run", help="Run a seeded Monte Carlo experiment")
        run.add_argument("--algorithm", choices=ALL_ALGORITHMS, required=True)
        run.add_argument("--k", type=int, nargs="+", help=f"Treelet height(s); default {DEFAULT_K}")
        source = run.add_mutually_exclusive_group(required=True)
        source.add_argument("--input", help="Undirected edge-list file")
        source.add_argument("--generate", type=int, nargs=2, metavar=("N", "EDGES"),
                            help="Generate a planted-partition graph instead")
        run.add_argument("--split", type=float, default=0.5, help="Generator cluster split")
        run.add_argument("--negative-fraction", type=float, default=0.2, help="Generator negative fraction")
        run.add_argument("--graph-seed", type=int, default=0, help="Generator seed")
        run.add_argument("--clusters", help="Clustering sidecar giving the unperturbed labels of --input")
        run.add_argument("--p", type=float, default=0.0, help="Flip probability")
        run.add_argument("--mode", choices=ALL_FLIP_MODES, default=FLIP_MODE_IID, help="Flip mode")
        run.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        run.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED, help="Master seed")
        run.add_argument("--positive-class", choices=("minority", "-1", "+1"), default=DEFAULT_POSITIVE_CLASS,
                         help="Class scored by the F-measure")
        run.add_argument("--neighbor-order", choices=(NEIGHBOR_ORDER_SHUFFLED, NEIGHBOR_ORDER_INPUT),
                         default=NEIGHBOR_ORDER_SHUFFLED, help="Adjacency visiting order of the BFS")
        run.add_argument("--root", help="BFS root node; default is the highest-degree node")
        run.add_argument("--largest-component", action="store_true",
                         help="Restrict --input to its largest connected component")
        run.add_argument("--workers", type=int, default=WORKERS, help="Worker processes for trials")
        run.add_argument("--timing", action="store_true", help="Record wall-clock time per trial")
        run.add_argument("--output", help="Output path prefix")
        run.set_defaults(handler=self.cmd_run)
        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Parse arguments and dispatch to a subcommand.

        Returns:
            0 on success, 1 on usage or input errors, 2 if a trial failed.
        """
        try:
            args = self.parser.parse_args(argv)
        except UsageError as e:
            print(e, file=sys.stderr)
            return EXIT_USAGE
        if args.verbose:
            set_level(logging.DEBUG)
        elif args.quiet:
            set_level(logging.WARNING)
        try:
            return args.handler(args)
        except (SignQueryError, OSError) as e:
            logger.error(str(e))
            return EXIT_USAGE

    def cmd_generate(self, args: argparse.Namespace) -> int:
        """Write a planted graph, its clustering and its label provenance."""
        spec = GeneratorSpec(
            n=args.n,
            target_edges=args.edges,
            cluster_split=args.split,
            negative_fraction_target=args.negative_fraction,
            seed=args.seed,
        )
        graph, clustering = generate_planted_graph(spec)
        base = consistent_labels(graph, clustering)
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed).spawn(1)[0])
        if args.flip_count is not None:
            labels = flip_exactly(base, args.flip_count, rng)
        else:
            labels = p_stochastic_flip(base, args.p, args.mode, rng)
        graph = graph.with_labels(labels.realized)

        store = ResultStore(args.output or Path(OUTPUT_DIR) / f"planted-n{spec.n}-m{spec.target_edges}")
        store.save_text(EDGES_FILE_SUFFIX, dump_edge_list(graph))
        store.save_clustering(dump_clustering(graph, clustering))
        sidecar: LabelSidecarData = {
            "p": labels.p,
            "mode": labels.mode or args.mode,
            "seed": spec.seed,
            "flipped_count": labels.flipped_count,
        }
        store.save_label_sidecar(sidecar)
        print(format_stats_table([(store.prefix.name, graph_stats(graph))]))
        return EXIT_OK

    def cmd_clean(self, args: argparse.Namespace) -> int:
        """Turn a directed snapshot into an undirected connected edge list."""
        report = LoadReport()
        with open(args.input, "r", encoding="utf-8") as f:
            graph = clean_directed_snapshot(f, report)
        prefix = args.output or Path(OUTPUT_DIR) / Path(args.input).stem
        ResultStore(prefix).save_text(EDGES_FILE_SUFFIX, dump_edge_list(graph))
        print(format_load_report(report))
        print(format_stats_table([(Path(args.input).stem, graph_stats(graph))]))
        return EXIT_OK

    def cmd_ratings(self, args: argparse.Namespace) -> int:
        """Write the signed similarity graph of a ratings file."""
        report = LoadReport()
        with open(args.input, "r", encoding="utf-8") as f:
            graph = similarity_graph_from_ratings(f, args.threshold, report)
        prefix = args.output or Path(OUTPUT_DIR) / Path(args.input).stem
        ResultStore(prefix).save_text(EDGES_FILE_SUFFIX, dump_edge_list(graph))
        print(format_load_report(report))
        print(format_stats_table([(Path(args.input).stem, graph_stats(graph))]))
        return EXIT_OK

    def cmd_stats(self, args: argparse.Namespace) -> int:
        """Print one statistics row per input."""
        rows = []
        for path in args.inputs:
            graph = EdgeListLoader().load_file(path, args.largest_component)
            rows.append((Path(path).stem, graph_stats(graph, with_diameter=args.diameter)))
        if args.json:
            print(json.dumps({name: stats for name, stats in rows}, indent=2))
        else:
            print(format_stats_table(rows))
        return EXIT_OK

    def cmd_run(self, args: argparse.Namespace) -> int:
        """Run one experiment per requested ``k``."""
        parameterised = args.algorithm in PARAMETERISED_ALGORITHMS
        if args.k and not parameterised:
            logger.warning(f"{args.algorithm} takes no k; ignoring --k")
        k_values = (args.k or [DEFAULT_K]) if parameterised else [None]

        try:
            generator = None
            if args.generate:
                generator = GeneratorSpec(
                    n=args.generate[0],
                    target_edges=args.generate[1],
                    cluster_split=args.split,
                    negative_fraction_target=args.negative_fraction,
                    seed=args.graph_seed,
                )
            configs = [
                ExperimentConfig(
                    algorithm=args.algorithm,
                    p=args.p,
                    k=k,
                    flip_mode=args.mode,
                    trials=args.trials,
                    master_seed=args.seed,
                    input=args.input,
                    generator=generator,
                    output=str(self._output_prefix(args, k, len(k_values) > 1)),
                    positive_class=args.positive_class,
                    neighbor_order=args.neighbor_order,
                    root=args.root,
                    largest_component=args.largest_component,
                    workers=args.workers,
                    timing=args.timing,
                    clusters=args.clusters,
                )
                for k in k_values
            ]
        except ParameterError as e:
            logger.error(f"Invalid configuration: {e}")
            return EXIT_USAGE

        prepared = None
        status = EXIT_OK
        for config in configs:
            runner = ExperimentRunner(config, prepared)
            outcome = runner.run()
            prepared = (runner.graph, runner.base)
            store = ResultStore(config.output)
            store.save_trials(outcome.results, timing=config.timing)
            store.save_summary(outcome.summary)
            print(format_summary(outcome.summary))
            if outcome.failed:
                status = EXIT_TRIAL_FAILURE
        return status

    @staticmethod
    def _output_prefix(args: argparse.Namespace, k: Optional[int], sweep: bool) -> Path:
        name = args.algorithm if k is None else f"{args.algorithm}-k{k}"
        if args.output:
            return Path(args.output + (f"-k{k}" if sweep else ""))
        return Path(OUTPUT_DIR) / name
