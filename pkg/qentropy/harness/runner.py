"""
Sweep runner: expands a plan into cells, executes them inline or on a
bounded process pool, and aggregates the results.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

from funcy import log_durations

from ..config.schemas.experiment_schema import ExperimentPlan
from ..core.market.prices import PriceTable, read_prices_csv
from .cells import CellJob, CellOutcome, run_cell
from .records import (
    SkippedCell,
    SweepSummary,
    WindowRecord,
    emit_results,
    fidelity_key,
    record_sort_key,
    summarize,
)
from .windows import enumerate_windows, window_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SweepResult:
    records: List[WindowRecord]
    summary: SweepSummary
    skipped: List[SkippedCell] = field(default_factory=list)
    loss_traces: Dict[str, List[float]] = field(default_factory=dict)
    amplitudes: Dict[str, List[float]] = field(default_factory=dict)

    def emit(self, path: Union[str, Path], plan: Optional[ExperimentPlan] = None,
             plot_data: bool = False) -> List[Path]:
        return emit_results(
            self.records,
            self.summary,
            path,
            config=plan.to_dict() if plan is not None else None,
            skipped=self.skipped,
            plot_data=plot_data,
            loss_traces=self.loss_traces,
        )


def plan_cells(plan: ExperimentPlan, table: PriceTable) -> List[CellJob]:
    """Every (window, method, fidelity, seed) cell, in sweep order."""
    jobs = []
    for window_index, window in enumerate(enumerate_windows(table, plan.window_length_months)):
        sub_table = table.window(window)
        for method in plan.methods:
            for fidelity_index, level in enumerate(plan.cell_fidelities(method)):
                for seed in plan.seeds:
                    jobs.append(CellJob(
                        window_index=window_index,
                        window_label=window_label(window),
                        table=sub_table,
                        method=method,
                        target_fidelity=level,
                        fidelity_index=fidelity_index,
                        seed=seed,
                        plan=plan,
                    ))
    return jobs


def _execute(jobs: List[CellJob], workers: int) -> List[CellOutcome]:
    if workers <= 1 or len(jobs) < 2:
        return [run_cell(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run_cell, jobs))


def _outcome_sort_key(outcome: CellOutcome):
    if outcome.record is not None:
        return record_sort_key(outcome.record)
    s = outcome.skipped
    return (s.window_label, s.method, fidelity_key(s.target_fidelity), s.seed)


@log_durations(logger.info, label="run_plan")
def run_plan(plan: ExperimentPlan, table: Optional[PriceTable] = None) -> SweepResult:
    """
    Run every cell of ``plan`` and summarize.

    Args:
        plan: The sweep definition.
        table: Pre-loaded prices; read from ``plan.input_path`` when omitted.
    """
    if table is None:
        table = read_prices_csv(plan.input_path)
    jobs = plan_cells(plan, table)
    logger.info("Running %d cells with %d worker(s)", len(jobs), plan.workers)
    outcomes = sorted(_execute(jobs, plan.workers), key=_outcome_sort_key)

    records = [o.record for o in outcomes if o.record is not None]
    skipped = [o.skipped for o in outcomes if o.skipped is not None]
    if skipped:
        logger.warning("Skipped %d of %d cells", len(skipped), len(jobs))
    return SweepResult(
        records=records,
        summary=summarize(records),
        skipped=skipped,
        loss_traces={o.key: o.loss_trace for o in outcomes if o.loss_trace is not None},
        amplitudes={o.key: o.amplitudes for o in outcomes if o.amplitudes is not None},
    )
