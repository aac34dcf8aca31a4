"""
Graph data types: signs, signed graphs, rooted trees and edge partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from models.errors import ParameterError


class Sign(IntEnum):
    """Edge label."""
    NEGATIVE = -1
    POSITIVE = 1

    @classmethod
    def parse(cls, token: str) -> "Sign":
        """
        Parse an edge-list sign token.

        Accepts "+1", "-1" and the bare "1" used by several public dumps.

        Raises:
            ValueError: if the token is not a sign.
        """
        if token in ("+1", "1"):
            return cls.POSITIVE
        if token == "-1":
            return cls.NEGATIVE
        raise ValueError(f"not a sign token: {token!r}")

    def __str__(self) -> str:
        return "+1" if self is Sign.POSITIVE else "-1"


@dataclass(frozen=True, eq=False)
class SignedGraph:
    """
    Undirected simple graph with optional per-edge signs.

    Node ids are dense integers ``0..node_count-1``. Edges are stored in input
    order under their canonical orientation ``(min(u, v), max(u, v))``; the
    position of an edge is its edge id. ``labels`` is ``None`` for a hidden
    view handed to a learner.
    """
    node_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    labels: Optional[np.ndarray] = None
    node_ids: tuple[str, ...] = ()

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Sequence[int]] = None,
        node_ids: Optional[Sequence[str]] = None,
    ) -> "SignedGraph":
        """
        Build a graph and check its invariants.

        Raises:
            ParameterError: on self-loops, repeated pairs, out-of-range ids or
                label vectors of the wrong length.
        """
        if node_count < 1:
            raise ParameterError("a graph needs at least one node")
        canonical: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop on node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ParameterError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise ParameterError(f"repeated edge {pair}")
            seen.add(pair)
            edge_id = len(canonical)
            canonical.append(pair)
            adjacency[pair[0]].append((pair[1], edge_id))
            adjacency[pair[1]].append((pair[0], edge_id))

        label_array = None
        if labels is not None:
            label_array = _sign_array(labels, len(canonical))

        ids = tuple(node_ids) if node_ids is not None else tuple(str(i) for i in range(node_count))
        if len(ids) != node_count:
            raise ParameterError("node id table does not match node count")
        return cls(
            node_count=node_count,
            edges=tuple(canonical),
            adjacency=tuple(tuple(nbrs) for nbrs in adjacency),
            labels=label_array,
            node_ids=ids,
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_labeled(self) -> bool:
        return self.labels is not None

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def neighbors(self, node: int) -> Iterator[int]:
        return (nbr for nbr, _ in self.adjacency[node])

    def sign(self, edge_id: int) -> Sign:
        if self.labels is None:
            raise ParameterError("graph labels are hidden")
        return Sign(int(self.labels[edge_id]))

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        """Canonical pair -> edge id."""
        return {pair: edge_id for edge_id, pair in enumerate(self.edges)}

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` integer array."""
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    def edge_between(self, u: int, v: int) -> Optional[int]:
        return self.edge_index.get((u, v) if u < v else (v, u))

    @property
    def negative_fraction(self) -> float:
        if self.labels is None or self.edge_count == 0:
            return 0.0
        return float(np.count_nonzero(self.labels < 0)) / self.edge_count

    def with_labels(self, labels: Sequence[int]) -> "SignedGraph":
        """Same structure, new signs."""
        return replace(self, labels=_sign_array(labels, self.edge_count))

    def hidden(self) -> "SignedGraph":
        """Same structure with the labels removed."""
        return replace(self, labels=None)


def _sign_array(labels: Sequence[int], edge_count: int) -> np.ndarray:
    array = np.asarray(labels, dtype=np.int8).copy()
    if array.shape != (edge_count,):
        raise ParameterError(f"expected {edge_count} labels, got {array.shape}")
    if not np.all((array == 1) | (array == -1)):
        raise ParameterError("labels must be +1 or -1")
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class RootedTree:
    """
    Rooted tree over a subset of the nodes of a host graph.

    ``nodes`` lists the members parents-first. ``parent`` and ``tree_edge`` are
    ``-1`` at the root. ``parity_tag`` is empty until the tree is tagged.
    """
    root: int
    nodes: tuple[int, ...]
    parent: dict[int, int]
    tree_edge: dict[int, int]
    depth: dict[int, int]
    height_tag: dict[int, int]
    parity_tag: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def is_member(self, node: int) -> bool:
        return node in self.parent

    @property
    def height(self) -> int:
        return self.height_tag[self.root]

    @property
    def is_tagged(self) -> bool:
        return bool(self.parity_tag)

    @property
    def edges(self) -> list[int]:
        """Host edge ids of the tree, in member order."""
        return [self.tree_edge[node] for node in self.nodes if node != self.root]

    @cached_property
    def children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {node: [] for node in self.nodes}
        for node in self.nodes:
            if node != self.root:
                kids[self.parent[node]].append(node)
        return kids


@dataclass(frozen=True)
class EdgePartition:
    """Query set and test set of one run."""
    query_edges: frozenset[int]
    test_edges: frozenset[int]

    @classmethod
    def from_queries(cls, edge_count: int, query_edges: Iterable[int]) -> "EdgePartition":
        queries = frozenset(query_edges)
        if any(not 0 <= e < edge_count for e in queries):
            raise ParameterError("query edge out of range")
        return cls(queries, frozenset(range(edge_count)) - queries)

    @property
    def query_count(self) -> int:
        return len(self.query_edges)

    @property
    def test_count(self) -> int:
        return len(self.test_edges)
