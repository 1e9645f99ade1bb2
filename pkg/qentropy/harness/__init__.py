"""
Experiment orchestration: sliding windows, sweep cells, aggregation and
result emission.
"""

from .cells import CellJob, CellOutcome, run_cell
from .records import (
    SkippedCell,
    SummaryRow,
    SweepSummary,
    WindowRecord,
    emit_plot_data,
    emit_results,
    entropy_table,
    mse_curve,
    read_records,
    read_summary,
    summarize,
)
from .runner import SweepResult, plan_cells, run_plan
from .windows import enumerate_windows, window_label

__all__ = [
    "CellJob",
    "CellOutcome",
    "SkippedCell",
    "SummaryRow",
    "SweepResult",
    "SweepSummary",
    "WindowRecord",
    "emit_plot_data",
    "emit_results",
    "entropy_table",
    "enumerate_windows",
    "mse_curve",
    "plan_cells",
    "read_records",
    "read_summary",
    "run_cell",
    "run_plan",
    "summarize",
    "window_label",
]
