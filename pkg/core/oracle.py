"""
Label oracle enforcing the active-learning query protocol.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from models.errors import OracleError
from models.graph import Sign
from utils.logger import logger


class LabelOracle:
    """
    Reveals edge signs one query at a time.

    ``reveals`` counts distinct edges revealed. Once sealed, any further query
    raises ``OracleError``; learners seal the oracle before their first
    prediction.
    """

    def __init__(self, labels: np.ndarray):
        """
        Initialize the oracle.

        Args:
            labels: Hidden true sign of every edge.
        """
        self._labels = labels
        self._revealed: dict[int, int] = {}
        self._sealed = False

    @property
    def reveals(self) -> int:
        return len(self._revealed)

    @property
    def sealed(self) -> bool:
        return self._sealed

    @property
    def revealed(self) -> Mapping[int, int]:
        """Read-only view of the revealed signs, keyed by edge id."""
        return MappingProxyType(self._revealed)

    def query(self, edge_id: int) -> Sign:
        """
        Reveal the sign of one edge.

        Raises:
            OracleError: after sealing, or for an unknown edge.
        """
        if self._sealed:
            raise OracleError(f"query of edge {edge_id} after predictions started")
        if not 0 <= edge_id < len(self._labels):
            raise OracleError(f"no such edge: {edge_id}")
        sign = self._revealed.get(edge_id)
        if sign is None:
            sign = int(self._labels[edge_id])
            self._revealed[edge_id] = sign
        return Sign(sign)

    def query_all(self, edge_ids: Iterable[int]) -> Mapping[int, int]:
        """Reveal a batch of edges and return the revealed-sign view."""
        for edge_id in edge_ids:
            self.query(edge_id)
        return self.revealed

    def seal(self) -> None:
        """Forbid further queries."""
        self._sealed = True
        logger.debug(f"Oracle sealed after {self.reveals} reveals")
