"""
Synthetic planted-partition graphs, cleaning of directed signed snapshots
and signed similarity graphs built from user ratings.
"""

from __future__ import annotations

import io
from typing import Callable, Iterator

import numpy as np
from scipy import sparse
from sklearn.metrics.pairwise import cosine_similarity

from config.constants import GENERATOR_FRACTION_TOLERANCE, SIMILARITY_CHUNK_ROWS, SIMILARITY_THRESHOLD
from core.edge_list import LoadReport, TextSource, extract_largest_component, parse_lines
from core.labeling import TwoClustering, consistent_labels
from models.errors import ConflictingEdgeError, EdgeListError, EmptyGraphError, InfeasibleSpecError, ParameterError
from models.experiment import GeneratorSpec
from models.graph import SignedGraph
from utils.logger import logger

Pair = tuple[int, int]


def _key(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def _sample_pairs(
    rng: np.random.Generator,
    draw: Callable[[], Pair],
    candidates: Callable[[], list[Pair]],
    capacity: int,
    count: int,
    existing: set[Pair],
    out: list[Pair],
) -> None:
    """
    Add ``count`` new uniformly random pairs of one kind.

    Rejection sampling while the kind is sparse; for dense requests the
    remaining candidates are enumerated and sampled without replacement.
    """
    if count <= 0:
        return
    if 2 * count < capacity:
        added = 0
        while added < count:
            pair = _key(*draw())
            if pair[0] != pair[1] and pair not in existing:
                existing.add(pair)
                out.append(pair)
                added += 1
        return
    free = [pair for pair in candidates() if pair not in existing]
    for i in rng.choice(len(free), size=count, replace=False):
        existing.add(free[i])
        out.append(free[i])


def generate_planted_graph(spec: GeneratorSpec) -> tuple[SignedGraph, TwoClustering]:
    """
    Random connected graph with a planted two-clustering.

    A random tree is grown inside each cluster and the two trees are joined
    by one bridge, which keeps the graph connected with as few negative edges
    as possible. Between-cluster edges are then added until the negative
    count reaches ``round(f * target_edges)`` and within-cluster edges fill
    the rest. The result has the same distribution as over-sampling
    within-cluster edges and pruning the surplus uniformly, with exactly
    ``target_edges`` edges. Labels are the consistent ones.

    Raises:
        InfeasibleSpecError: if the negative fraction cannot be brought within
            two percentage points of the target.
    """
    rng = np.random.default_rng(spec.seed)
    n, target = spec.n, spec.target_edges
    clustering = TwoClustering.fixed_split(n, spec.cluster_split, rng)
    groups = [
        [int(v) for v in rng.permutation(np.flatnonzero(clustering.side == s))]
        for s in (0, 1)
    ]

    existing: set[Pair] = set()
    edges: list[Pair] = []
    for group in groups:
        for i in range(1, len(group)):
            pair = _key(group[i], group[int(rng.integers(i))])
            existing.add(pair)
            edges.append(pair)
    negatives = 0
    if groups[0] and groups[1]:
        pair = _key(groups[0][int(rng.integers(len(groups[0])))], groups[1][int(rng.integers(len(groups[1])))])
        existing.add(pair)
        edges.append(pair)
        negatives = 1

    a, b = groups
    between_capacity = len(a) * len(b)
    within_capacity = len(a) * (len(a) - 1) // 2 + len(b) * (len(b) - 1) // 2
    want_negative = max(round(spec.negative_fraction_target * target), negatives)
    want_negative = min(want_negative, between_capacity, target - (len(edges) - negatives))
    want_positive = min(target - want_negative, within_capacity)
    total = want_negative + want_positive
    achieved = want_negative / total if total else 0.0
    if (
        total < target
        or abs(achieved - spec.negative_fraction_target) > GENERATOR_FRACTION_TOLERANCE
    ):
        raise InfeasibleSpecError(
            f"cannot reach {spec.negative_fraction_target:.3f} negative edges "
            f"with {target} edges and split {spec.cluster_split}",
            achieved,
        )

    def draw_between() -> Pair:
        return a[int(rng.integers(len(a)))], b[int(rng.integers(len(b)))]

    def draw_within() -> Pair:
        group = a if rng.random() * within_capacity < len(a) * (len(a) - 1) / 2 else b
        u, v = rng.choice(len(group), size=2, replace=False)
        return group[int(u)], group[int(v)]

    def all_between() -> list[Pair]:
        return [_key(u, v) for u in a for v in b]

    def all_within() -> list[Pair]:
        return [_key(g[i], g[j]) for g in groups for i in range(len(g)) for j in range(i + 1, len(g))]

    tree_positive = len(edges) - negatives
    _sample_pairs(rng, draw_between, all_between, between_capacity,
                  want_negative - negatives, existing, edges)
    _sample_pairs(rng, draw_within, all_within, within_capacity,
                  want_positive - tree_positive, existing, edges)

    order = rng.permutation(len(edges))
    graph = SignedGraph.from_edges(n, [edges[i] for i in order])
    graph = graph.with_labels(consistent_labels(graph, clustering).realized)
    logger.info(
        f"Generated planted graph: {n} nodes, {graph.edge_count} edges, "
        f"{graph.negative_fraction:.3%} negative"
    )
    return graph, clustering


def clean_directed_snapshot(text: TextSource, report: LoadReport | None = None) -> SignedGraph:
    """
    Turn a directed signed edge list into an undirected connected graph.

    Reciprocal pairs with mismatching signs are dropped, matching pairs
    collapse to one edge, self-loops are dropped, and the largest connected
    component of what remains is kept. Counters go to ``report``.

    Raises:
        EdgeListError: on malformed lines.
        ConflictingEdgeError: when one directed edge repeats with another sign.
        EmptyGraphError: if no edge survives.
    """
    report = report if report is not None else LoadReport()
    index: dict[str, int] = {}
    arcs: dict[Pair, int] = {}
    first_seen: dict[Pair, None] = {}

    for line_number, a, b, sign in parse_lines(text):
        report.lines += 1
        if a == b:
            report.self_loops += 1
            continue
        u = index.setdefault(a, len(index))
        v = index.setdefault(b, len(index))
        previous = arcs.get((u, v))
        if previous is not None:
            if previous != sign:
                raise ConflictingEdgeError(a, b, line_number)
            report.duplicates += 1
            continue
        arcs[(u, v)] = int(sign)
        first_seen.setdefault(_key(u, v))

    edges: list[Pair] = []
    labels: list[int] = []
    for pair in first_seen:
        u, v = pair
        forward, backward = arcs.get((u, v)), arcs.get((v, u))
        if forward is not None and backward is not None:
            if forward != backward:
                report.reciprocal_conflicts += 1
                continue
            report.reciprocal_matches += 1
        edges.append(pair)
        labels.append(forward if forward is not None else backward)

    logger.info(
        f"Directed snapshot: {len(arcs)} arcs, {report.reciprocal_conflicts} mismatching "
        f"reciprocal pairs dropped, {report.reciprocal_matches} matching pairs collapsed, "
        f"{report.self_loops} self-loops dropped"
    )
    if not edges:
        raise EmptyGraphError("no undirected edge survives cleaning")

    names = [""] * len(index)
    for name, node in index.items():
        names[node] = name
    graph = SignedGraph.from_edges(len(names), edges, labels, names)
    return extract_largest_component(graph, report)


def _split_rating(line: str) -> list[str]:
    if "::" in line:
        return line.split("::")
    return line.replace(",", " ").split()


def parse_ratings(text: TextSource) -> Iterator[tuple[int, str, str, float]]:
    """
    Yield ``(line_number, user, item, rating)`` for every rating line.

    Accepts ``user::item::rating[::timestamp]`` as well as comma or
    whitespace separated columns. A non-numeric rating on the first
    data line is taken as a header.

    Raises:
        EdgeListError: on a line without a numeric rating.
    """
    lines = io.StringIO(text) if isinstance(text, str) else text
    first = True
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = _split_rating(line)
        if len(tokens) < 3:
            raise EdgeListError(line_number, line, f"expected at least 3 columns, got {len(tokens)}")
        try:
            rating = float(tokens[2])
        except ValueError:
            if first:
                first = False
                continue
            raise EdgeListError(line_number, line, "bad rating") from None
        first = False
        if not np.isfinite(rating):
            raise EdgeListError(line_number, line, "bad rating")
        yield line_number, tokens[0], tokens[1], rating


def similarity_graph_from_ratings(
    text: TextSource,
    threshold: float = SIMILARITY_THRESHOLD,
    report: LoadReport | None = None,
) -> SignedGraph:
    """
    Signed user-user graph from a ratings file.

    Each user's mean rating is subtracted from their ratings, then users are
    compared by the cosine similarity of their centred rating vectors.
    Entries with ``|similarity| < threshold`` and self-pairs are dropped and
    every surviving pair becomes an edge carrying the sign of its similarity.
    The largest connected component is kept. A repeated (user, item) pair
    keeps its last rating.

    Raises:
        ParameterError: if ``threshold`` is not in ``(0, 1]``.
        EdgeListError: on malformed lines.
        EmptyGraphError: if no pair of users passes the threshold.
    """
    if not 0.0 < threshold <= 1.0:
        raise ParameterError(f"similarity threshold must be in (0, 1], got {threshold}")
    report = report if report is not None else LoadReport()
    users: dict[str, int] = {}
    items: dict[str, int] = {}
    ratings: dict[Pair, float] = {}
    for _, user, item, rating in parse_ratings(text):
        report.lines += 1
        key = (users.setdefault(user, len(users)), items.setdefault(item, len(items)))
        if key in ratings:
            report.duplicates += 1
        ratings[key] = rating
    if not ratings:
        raise EmptyGraphError("no ratings in input")

    rows = np.fromiter((u for u, _ in ratings), dtype=np.int64, count=len(ratings))
    cols = np.fromiter((i for _, i in ratings), dtype=np.int64, count=len(ratings))
    values = np.fromiter(ratings.values(), dtype=float, count=len(ratings))
    means = np.bincount(rows, weights=values, minlength=len(users)) / np.bincount(rows, minlength=len(users))
    centred = sparse.csr_matrix((values - means[rows], (rows, cols)), shape=(len(users), len(items)))
    centred.eliminate_zeros()

    edges: list[Pair] = []
    labels: list[int] = []
    for start in range(0, len(users), SIMILARITY_CHUNK_ROWS):
        block = cosine_similarity(centred[start:start + SIMILARITY_CHUNK_ROWS], centred)
        local, other = np.nonzero(np.abs(block) >= threshold)
        upper = other > local + start
        for r, c in zip(local[upper], other[upper]):
            edges.append((start + int(r), int(c)))
            labels.append(1 if block[r, c] > 0 else -1)

    logger.info(
        f"Ratings: {len(ratings)} ratings by {len(users)} users on {len(items)} items, "
        f"{len(edges)} similarity edges at threshold {threshold}"
    )
    if not edges:
        raise EmptyGraphError(f"no pair of users reaches similarity {threshold}")

    names = [""] * len(users)
    for name, node in users.items():
        names[node] = name
    graph = SignedGraph.from_edges(len(names), edges, labels, names)
    return extract_largest_component(graph, report)
