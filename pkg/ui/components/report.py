"""
Plain-text report rendering for the SignQuery command line.
"""

from typing import Optional, Sequence

from core.edge_list import LoadReport
from models.types import GraphStatsData, SummaryData

STATS_HEADER = ("dataset", "|V|", "|E|", "neg", "|V|/|E|", "avgdeg", "diam")


def format_stats_table(rows: Sequence[tuple[str, GraphStatsData]]) -> str:
    """
    Render dataset statistics as an aligned table.

    Args:
        rows: ``(name, stats)`` pairs, one per dataset.

    Returns:
        The table, header first, one line per dataset.
    """
    cells = [STATS_HEADER]
    for name, stats in rows:
        diameter: Optional[int] = stats["diameter"]
        cells.append((
            name,
            str(stats["nodes"]),
            str(stats["edges"]),
            f"{stats['negative_fraction']:.1%}",
            f"{stats['nodes_per_edge']:.1%}",
            f"{stats['average_degree']:.1f}",
            "-" if diameter is None else str(diameter),
        ))
    widths = [max(len(row[i]) for row in cells) for i in range(len(STATS_HEADER))]
    lines = [
        "  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths)))
        for row in cells
    ]
    return "\n".join(lines)


def format_load_report(report: LoadReport) -> str:
    """One line per non-zero repair counter."""
    labels = {
        "duplicates": "duplicate edges merged",
        "self_loops": "self-loops dropped",
        "reciprocal_conflicts": "mismatching reciprocal pairs dropped",
        "reciprocal_matches": "matching reciprocal pairs collapsed",
        "dropped_nodes": "nodes outside the largest component",
        "dropped_edges": "edges outside the largest component",
    }
    lines = [f"{getattr(report, field)} {text}" for field, text in labels.items() if getattr(report, field)]
    return "\n".join(lines) if lines else "no repairs needed"


def format_summary(summary: SummaryData) -> str:
    """Human-readable digest of an experiment summary."""
    config = summary["config"]
    name = config["algorithm"] + (f" k={config['k']}" if config.get("k") else "")
    ok = summary["trials"] - len(summary["failed_trials"])
    lines = [
        f"{name}  p={config['p']} ({config['flip_mode']})  "
        f"{summary['node_count']} nodes, {summary['edge_count']} edges",
        f"  trials            {ok}/{summary['trials']} ok",
        f"  query fraction    {summary['query_fraction']:.4f}",
    ]
    for key in ("mistakes", "f_measure", "optimality_factor", "query_count"):
        metric = summary[key]
        lines.append(f"  {key:<17} {metric['mean']:.4f} +/- {metric['std']:.4f}")
    lines.append(f"  lower bound       {summary['lower_bound']:.4f}")
    lines.append(f"  circuits          max {summary['max_circuit']}, mean {summary['mean_circuit']:.3f}")
    for key, value in summary["diagnostics"].items():
        lines.append(f"  {key:<17} {value:.4g}")
    if summary["failed_trials"]:
        lines.append(f"  failed trials     {', '.join(map(str, summary['failed_trials']))}")
    return "\n".join(lines)
