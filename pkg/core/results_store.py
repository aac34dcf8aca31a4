"""
Result persistence for SignQuery.
"""

import csv
import json
from pathlib import Path
from typing import Iterable, Union

from config.constants import (
    CLUSTERS_FILE_SUFFIX,
    CSV_COLUMNS,
    LABELS_FILE_SUFFIX,
    SUMMARY_FILE_SUFFIX,
    TRIALS_FILE_SUFFIX,
)
from models.experiment import TrialResult
from models.types import LabelSidecarData, SummaryData, TrialRow
from utils.logger import logger


def trial_row(result: TrialResult, timing: bool) -> TrialRow:
    """
    Format one trial for the CSV file.

    Floats are written with ``repr`` so identical runs give identical bytes;
    ``elapsed_ms`` is 0 unless timing is on.
    """
    return {
        "trial": result.trial_index,
        "mistakes": result.mistakes,
        "test_count": result.test_count,
        "query_count": result.query_count,
        "f_measure": repr(result.f_measure),
        "max_circuit": result.max_circuit,
        "mean_circuit": repr(result.mean_circuit),
        "elapsed_ms": repr(round(result.elapsed * 1000.0, 3)) if timing else "0",
        "optimality_factor": repr(result.optimality_factor),
    }


class ResultStore:
    """Writes experiment and generator outputs under one path prefix."""

    def __init__(self, prefix: Union[str, Path]):
        """
        Initialize the store.

        Args:
            prefix: Output path without suffix, e.g. ``results/treecutter-k3``.
        """
        self.prefix = Path(prefix)

    def path(self, suffix: str) -> Path:
        return self.prefix.with_name(self.prefix.name + suffix)

    def _open(self, suffix: str):
        target = self.path(suffix)
        target.parent.mkdir(parents=True, exist_ok=True)
        return open(target, "w", newline="", encoding="utf-8")

    def save_trials(self, results: Iterable[TrialResult], timing: bool = False) -> Path:
        """Write the per-trial CSV, failed trials excluded."""
        try:
            with self._open(TRIALS_FILE_SUFFIX) as f:
                writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
                writer.writeheader()
                for result in results:
                    if not result.failed:
                        writer.writerow(trial_row(result, timing))
            logger.info(f"Trials saved to {self.path(TRIALS_FILE_SUFFIX)}")
        except IOError as e:
            logger.error(f"Could not save trials: {e}")
            raise
        return self.path(TRIALS_FILE_SUFFIX)

    def save_summary(self, summary: SummaryData) -> Path:
        """Write the config and summary JSON."""
        return self._save_json(SUMMARY_FILE_SUFFIX, summary, "Summary")

    def save_label_sidecar(self, sidecar: LabelSidecarData) -> Path:
        """Write the provenance of a generated label assignment."""
        return self._save_json(LABELS_FILE_SUFFIX, sidecar, "Label sidecar")

    def save_text(self, suffix: str, text: str) -> Path:
        """Write a text artefact such as an edge list or clustering."""
        try:
            with self._open(suffix) as f:
                f.write(text)
        except IOError as e:
            logger.error(f"Could not save {self.path(suffix)}: {e}")
            raise
        return self.path(suffix)

    def save_clustering(self, text: str) -> Path:
        return self.save_text(CLUSTERS_FILE_SUFFIX, text)

    def _save_json(self, suffix: str, data: dict, what: str) -> Path:
        try:
            with self._open(suffix) as f:
                json.dump(data, f, indent=2)
                f.write("\n")
            logger.info(f"{what} saved to {self.path(suffix)}")
        except IOError as e:
            logger.error(f"Could not save {what.lower()}: {e}")
            raise
        return self.path(suffix)
