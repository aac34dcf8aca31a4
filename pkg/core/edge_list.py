"""
Edge-list reading and writing for SignQuery.

Format: one edge per line, ``u v s`` separated by whitespace, where ``u`` and
``v`` are arbitrary node tokens and ``s`` is ``+1``, ``-1`` or ``1``. Lines
starting with ``#`` and blank lines are ignored. UTF-8, LF or CRLF.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO, Union

import networkx as nx

from core.labeling import TwoClustering
from models.errors import ConflictingEdgeError, EdgeListError, EmptyGraphError
from models.graph import Sign, SignedGraph
from utils.logger import logger

TextSource = Union[str, TextIO, Iterable[str]]


@dataclass
class LoadReport:
    """Counters of input anomalies that were repaired rather than rejected."""
    lines: int = 0
    duplicates: int = 0
    self_loops: int = 0
    reciprocal_conflicts: int = 0
    reciprocal_matches: int = 0
    dropped_nodes: int = 0
    dropped_edges: int = 0


def parse_lines(text: TextSource) -> Iterator[tuple[int, str, str, Sign]]:
    """
    Yield ``(line_number, u, v, sign)`` for every edge line.

    Raises:
        EdgeListError: on a line that is not ``u v s``.
    """
    lines = io.StringIO(text) if isinstance(text, str) else text
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise EdgeListError(line_number, line, f"expected 3 tokens, got {len(tokens)}")
        try:
            sign = Sign.parse(tokens[2])
        except ValueError:
            raise EdgeListError(line_number, line, "bad sign token") from None
        yield line_number, tokens[0], tokens[1], sign


class EdgeListLoader:
    """Loads undirected signed edge lists into dense-id graphs."""

    def __init__(self):
        """Initialize the loader."""
        self.report = LoadReport()

    def load(self, text: TextSource, largest_component: bool = False) -> SignedGraph:
        """
        Parse an undirected edge list.

        Args:
            text: File contents, an open text file or an iterable of lines.
            largest_component: Keep only the largest connected component.

        Returns:
            The graph; ``node_ids`` maps dense ids back to the input tokens.

        Raises:
            EdgeListError: on malformed lines.
            ConflictingEdgeError: when a pair repeats with a different sign.
            EmptyGraphError: when no edge survives.
        """
        self.report = LoadReport()
        index: dict[str, int] = {}
        edges: list[tuple[int, int]] = []
        labels: list[int] = []
        seen: dict[tuple[int, int], int] = {}

        for line_number, a, b, sign in parse_lines(text):
            self.report.lines += 1
            if a == b:
                self.report.self_loops += 1
                continue
            u = index.setdefault(a, len(index))
            v = index.setdefault(b, len(index))
            pair = (u, v) if u < v else (v, u)
            previous = seen.get(pair)
            if previous is not None:
                if labels[previous] != sign:
                    raise ConflictingEdgeError(a, b, line_number)
                self.report.duplicates += 1
                continue
            seen[pair] = len(edges)
            edges.append(pair)
            labels.append(int(sign))

        if self.report.duplicates or self.report.self_loops:
            logger.warning(
                f"Edge list repaired: {self.report.duplicates} duplicates, "
                f"{self.report.self_loops} self-loops dropped"
            )
        if not edges:
            raise EmptyGraphError("edge list contains no edges")

        names = [""] * len(index)
        for name, node in index.items():
            names[node] = name
        graph = SignedGraph.from_edges(len(names), edges, labels, names)
        logger.info(f"Loaded graph: {graph.node_count} nodes, {graph.edge_count} edges")
        if largest_component:
            graph = extract_largest_component(graph, self.report)
        return graph

    def load_file(self, path: Union[str, Path], largest_component: bool = False) -> SignedGraph:
        """Load an edge-list file."""
        with open(path, "r", encoding="utf-8") as f:
            return self.load(f, largest_component)


def load_edge_list(text: TextSource, largest_component: bool = False) -> SignedGraph:
    """Parse an undirected edge list; see ``EdgeListLoader.load``."""
    return EdgeListLoader().load(text, largest_component)


def dump_edge_list(graph: SignedGraph) -> str:
    """Serialise a labelled graph using its original node tokens."""
    lines = [f"# nodes {graph.node_count} edges {graph.edge_count}"]
    for edge_id, (u, v) in enumerate(graph.edges):
        lines.append(f"{graph.node_ids[u]} {graph.node_ids[v]} {graph.sign(edge_id)}")
    return "\n".join(lines) + "\n"


def to_networkx(graph: SignedGraph) -> nx.Graph:
    """Copy a graph into networkx, keeping edge ids and signs as attributes."""
    g = nx.Graph()
    g.add_nodes_from(range(graph.node_count))
    for edge_id, (u, v) in enumerate(graph.edges):
        if graph.labels is None:
            g.add_edge(u, v, id=edge_id)
        else:
            g.add_edge(u, v, id=edge_id, sign=int(graph.labels[edge_id]))
    return g


def extract_largest_component(graph: SignedGraph, report: LoadReport | None = None) -> SignedGraph:
    """
    Restrict a graph to its largest connected component.

    Ties go to the component holding the smallest node id. Surviving nodes
    keep their relative order; surviving edges keep input order.
    """
    components = nx.connected_components(to_networkx(graph))
    keep = max(components, key=lambda c: (len(c), -min(c)))
    if len(keep) == graph.node_count:
        return graph

    remap = {old: new for new, old in enumerate(sorted(keep))}
    edges: list[tuple[int, int]] = []
    labels: list[int] = []
    for edge_id, (u, v) in enumerate(graph.edges):
        if u in remap:
            edges.append((remap[u], remap[v]))
            if graph.labels is not None:
                labels.append(int(graph.labels[edge_id]))
    names = [graph.node_ids[old] for old in sorted(keep)]
    if report is not None:
        report.dropped_nodes += graph.node_count - len(keep)
        report.dropped_edges += graph.edge_count - len(edges)
    logger.info(
        f"Largest component kept: {len(keep)} of {graph.node_count} nodes, "
        f"{len(edges)} of {graph.edge_count} edges"
    )
    return SignedGraph.from_edges(
        len(names), edges, labels if graph.labels is not None else None, names
    )


def dump_clustering(graph: SignedGraph, clustering: TwoClustering) -> str:
    """One ``node side`` line per node, using the graph's node tokens."""
    lines = ["# node side"]
    lines.extend(f"{graph.node_ids[v]} {int(clustering.side[v])}" for v in range(graph.node_count))
    return "\n".join(lines) + "\n"


def load_clustering(text: TextSource, graph: SignedGraph) -> TwoClustering:
    """
    Read a clustering sidecar written by ``dump_clustering``.

    Raises:
        EdgeListError: on malformed lines. Unknown nodes are skipped.
    """
    node_of = {name: v for v, name in enumerate(graph.node_ids)}
    sides = [0] * graph.node_count
    lines = io.StringIO(text) if isinstance(text, str) else text
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2 or tokens[1] not in ("0", "1"):
            raise EdgeListError(line_number, line, "expected 'node side'")
        if tokens[0] not in node_of:
            # nodes dropped by component extraction
            continue
        sides[node_of[tokens[0]]] = int(tokens[1])
    return TwoClustering.from_sides(sides)
