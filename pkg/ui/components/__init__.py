"""
UI components for SignQuery.
"""

from .report import format_load_report, format_stats_table, format_summary
