"""
Decompositions produced by the learners' selection phase.
"""

from __future__ import annotations

from dataclasses import dataclass

from models.graph import RootedTree, SignedGraph


@dataclass(frozen=True, eq=False)
class TreeletDecomposition:
    """
    Node-disjoint subtrees of a spanning tree, each of height at most ``k``.

    Every treelet but the last has height exactly ``k``; the last one holds
    the spanning tree's root. ``owner[v]`` is the treelet index of node ``v``.
    """
    treelets: tuple[RootedTree, ...]
    owner: tuple[int, ...]
    k: int

    def __len__(self) -> int:
        return len(self.treelets)


@dataclass(frozen=True)
class Star:
    """A centre, its leaves and the edges joining them."""
    center: int
    leaves: tuple[int, ...]
    star_edges: tuple[int, ...]
    static_degree: int = 0
    residual_degree: int = 0


@dataclass(frozen=True, eq=False)
class StarDecomposition:
    """Node-disjoint stars covering a graph; ``owner[v]`` is a star index."""
    stars: tuple[Star, ...]
    owner: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.stars)

    @property
    def edge_total(self) -> int:
        return sum(len(star.star_edges) for star in self.stars)

    @property
    def residual_ratio(self) -> float:
        """Mean residual/static degree of the chosen centres."""
        ratios = [s.residual_degree / s.static_degree for s in self.stars if s.static_degree]
        return sum(ratios) / len(ratios) if ratios else 1.0


@dataclass(frozen=True, eq=False)
class ContractionGraph:
    """
    Graph whose nodes are treelets, adjacent when some host edge joins them.

    ``graph`` is an unlabelled ``SignedGraph`` over treelet indices;
    ``witness[c]`` is the first host edge seen realising contraction edge
    ``c``. ``node_of`` maps host nodes to contraction nodes and
    ``representative`` maps contraction nodes back to their treelet root.
    """
    graph: SignedGraph
    witness: tuple[int, ...]
    node_of: tuple[int, ...]
    representative: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges


@dataclass(frozen=True)
class StarOfTreelets:
    """A star of the contraction graph and the host edges queried inside it."""
    center_treelet: int
    leaf_treelets: tuple[int, ...]
    intra_star_query_edges: tuple[int, ...]
