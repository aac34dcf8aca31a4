"""
Ground-truth labels: planted two-clusterings and p-stochastic perturbation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.constants import FLIP_MODE_FACT1, FLIP_MODE_IID, MAX_FLIP_PROBABILITY
from models.errors import ParameterError
from models.graph import SignedGraph


@dataclass(frozen=True, eq=False)
class TwoClustering:
    """Bipartition of the nodes; ``side[v]`` is 0 or 1. Either side may be empty."""
    side: np.ndarray

    @classmethod
    def from_sides(cls, sides) -> "TwoClustering":
        side = np.asarray(sides, dtype=np.int8).copy()
        if not np.all((side == 0) | (side == 1)):
            raise ParameterError("cluster sides must be 0 or 1")
        side.flags.writeable = False
        return cls(side)

    @classmethod
    def uniform(cls, node_count: int, rng: np.random.Generator) -> "TwoClustering":
        """Every node picks a side with a fair coin."""
        return cls.from_sides(rng.integers(0, 2, size=node_count))

    @classmethod
    def fixed_split(cls, node_count: int, ratio: float, rng: np.random.Generator) -> "TwoClustering":
        """``round(ratio * n)`` random nodes on side 0, the rest on side 1."""
        if not 0.0 <= ratio <= 1.0:
            raise ParameterError("split ratio must lie in [0, 1]")
        side = np.ones(node_count, dtype=np.int8)
        side[rng.permutation(node_count)[: round(ratio * node_count)]] = 0
        return cls.from_sides(side)

    def __len__(self) -> int:
        return len(self.side)


@dataclass(frozen=True, eq=False)
class LabelAssignment:
    """
    Edge labels of one draw.

    ``consistent`` holds the unperturbed signs (those of ``base`` when a
    clustering is known) and ``realized[e] == -consistent[e]`` exactly when
    ``flipped[e]``. ``selected_count`` is the number of edges whose label was
    randomised, which in ``fact1`` mode exceeds the number actually flipped.
    """
    base: Optional[TwoClustering]
    consistent: np.ndarray
    realized: np.ndarray
    flipped: np.ndarray
    p: float = 0.0
    mode: Optional[str] = None
    selected_count: int = 0

    @property
    def flipped_count(self) -> int:
        return int(np.count_nonzero(self.flipped))

    @property
    def flipped_edges(self) -> np.ndarray:
        return np.flatnonzero(self.flipped)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def consistent_labels(graph: SignedGraph, clustering: TwoClustering) -> LabelAssignment:
    """Within-cluster edges positive, between-cluster edges negative."""
    if len(clustering) != graph.node_count:
        raise ParameterError("clustering does not cover the graph")
    ends = graph.edge_array
    same = clustering.side[ends[:, 0]] == clustering.side[ends[:, 1]]
    signs = _frozen(np.where(same, 1, -1).astype(np.int8))
    return LabelAssignment(
        base=clustering,
        consistent=signs,
        realized=signs,
        flipped=_frozen(np.zeros(graph.edge_count, dtype=bool)),
    )


def labels_from_signs(graph: SignedGraph) -> LabelAssignment:
    """Treat the graph's own signs as the unperturbed labelling (real datasets)."""
    if graph.labels is None:
        raise ParameterError("graph has no labels")
    return LabelAssignment(
        base=None,
        consistent=graph.labels,
        realized=graph.labels,
        flipped=_frozen(np.zeros(graph.edge_count, dtype=bool)),
    )


def p_stochastic_flip(
    base: LabelAssignment,
    p: float,
    mode: str,
    rng: np.random.Generator,
) -> LabelAssignment:
    """
    Perturb a labelling so that every edge flips with probability at most ``p``.

    Modes:
        ``iid``: each edge flips independently with probability exactly ``p``.
        ``fact1``: ``floor(2 p |E|)`` edges are drawn without replacement and
        each gets a fresh fair-coin sign, so each flips with probability
        at most ``p``.

    Raises:
        ParameterError: if ``p`` is outside ``[0, 1/2)`` or the mode is unknown.
    """
    if not 0.0 <= p < MAX_FLIP_PROBABILITY:
        raise ParameterError(f"flip probability {p} outside [0, 1/2)")
    consistent = base.consistent
    m = len(consistent)

    if mode == FLIP_MODE_IID:
        flipped = rng.random(m) < p
        realized = np.where(flipped, -consistent, consistent).astype(np.int8)
        selected = int(np.count_nonzero(flipped))
    elif mode == FLIP_MODE_FACT1:
        selected = math.floor(2 * p * m)
        chosen = rng.choice(m, size=selected, replace=False)
        realized = np.array(consistent, dtype=np.int8)
        realized[chosen] = rng.choice(np.array([-1, 1], dtype=np.int8), size=selected)
        flipped = realized != consistent
    else:
        raise ParameterError(f"unknown flip mode {mode!r}")

    return LabelAssignment(
        base=base.base,
        consistent=consistent,
        realized=_frozen(realized),
        flipped=_frozen(flipped),
        p=p,
        mode=mode,
        selected_count=selected,
    )


def flip_exactly(base: LabelAssignment, count: int, rng: np.random.Generator) -> LabelAssignment:
    """Flip ``count`` uniformly chosen labels (a fixed-size perturbation)."""
    m = len(base.consistent)
    if not 0 <= count <= m:
        raise ParameterError(f"cannot flip {count} of {m} labels")
    flipped = np.zeros(m, dtype=bool)
    flipped[rng.choice(m, size=count, replace=False)] = True
    realized = np.where(flipped, -base.consistent, base.consistent).astype(np.int8)
    return LabelAssignment(
        base=base.base,
        consistent=base.consistent,
        realized=_frozen(realized),
        flipped=_frozen(flipped),
        p=count / m if m else 0.0,
        mode="exact",
        selected_count=count,
    )


def lower_bound_mistakes(p: float, test_count: int) -> float:
    """Expected-mistake lower bound ``p * |test set|`` for any learner."""
    if not 0.0 <= p < MAX_FLIP_PROBABILITY:
        raise ParameterError(f"flip probability {p} outside [0, 1/2)")
    if test_count < 0:
        raise ParameterError("test_count must be non-negative")
    return p * test_count
