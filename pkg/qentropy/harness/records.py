"""
Sweep records, their aggregation and file emission.

Output directory layout:
    records.csv         one row per WindowRecord, fixed column order
    summary.json        per (method, fidelity) summary, skipped cells, config
    entropy_table.csv   windows x methods mean entropy, oracle first   (plot data)
    mse_curve.csv       method, fidelity, MSE and mean errors          (plot data)
    loss_traces.json    VQSVD loss trace per cell                      (plot data)
"""

import json
import logging
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from funcy import pluck_attr
from toolz import groupby

logger = logging.getLogger(__name__)

RECORDS_FILE = "records.csv"
SUMMARY_FILE = "summary.json"
ENTROPY_TABLE_FILE = "entropy_table.csv"
MSE_CURVE_FILE = "mse_curve.csv"
LOSS_TRACES_FILE = "loss_traces.json"


@dataclass(frozen=True)
class WindowRecord:
    """Outcome of one (window, method, fidelity, seed) cell."""
    window_label: str
    method: str
    target_fidelity: Optional[float]
    achieved_fidelity: float
    entropy_vqsvd: float
    entropy_oracle: float
    frobenius_error: float
    cnot_count: int
    gate_count: int
    seed: int
    wall_time: float = 0.0
    converged: bool = True
    leaked_mass: float = 0.0
    frobenius_error_ideal: Optional[float] = None

    @property
    def squared_error(self) -> float:
        return (self.entropy_vqsvd - self.entropy_oracle) ** 2

    @property
    def cell_key(self) -> str:
        return cell_key(self.window_label, self.method, self.target_fidelity, self.seed)

    def to_row(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_row(cls, row: Dict[str, Any]) -> "WindowRecord":
        return cls(
            window_label=str(row['window_label']),
            method=str(row['method']),
            target_fidelity=_optional_float(row['target_fidelity']),
            achieved_fidelity=float(row['achieved_fidelity']),
            entropy_vqsvd=float(row['entropy_vqsvd']),
            entropy_oracle=float(row['entropy_oracle']),
            frobenius_error=float(row['frobenius_error']),
            cnot_count=int(row['cnot_count']),
            gate_count=int(row['gate_count']),
            seed=int(row['seed']),
            wall_time=float(row['wall_time']),
            converged=_as_bool(row['converged']),
            leaked_mass=float(row['leaked_mass']),
            frobenius_error_ideal=_optional_float(row['frobenius_error_ideal']),
        )


RECORD_COLUMNS: Tuple[str, ...] = tuple(f.name for f in fields(WindowRecord))


@dataclass(frozen=True)
class SkippedCell:
    window_label: str
    method: str
    target_fidelity: Optional[float]
    seed: int
    reason: str

    def to_dict(self) -> Dict:
        return asdict(self)


def _optional_float(value) -> Optional[float]:
    if value is None or value == "":
        return None
    value = float(value)
    return None if math.isnan(value) else value


def _as_bool(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("true", "1")
    return bool(value)


def fidelity_key(target_fidelity: Optional[float]) -> float:
    return -1.0 if target_fidelity is None else target_fidelity


def cell_key(window: str, method: str, target_fidelity: Optional[float], seed: int) -> str:
    level = "-" if target_fidelity is None else f"{target_fidelity:g}"
    return f"{window}/{method}/{level}/{seed}"


def record_sort_key(record: WindowRecord) -> Tuple:
    return (record.window_label, record.method, fidelity_key(record.target_fidelity), record.seed)


@dataclass(frozen=True)
class SummaryRow:
    """Aggregate over all windows and seeds of one (method, fidelity) level."""
    method: str
    target_fidelity: Optional[float]
    count: int
    mse: float
    mean_frobenius_error: float
    mean_achieved_fidelity: float
    mean_cnot_count: float
    mean_gate_count: float
    mean_wall_time: float
    converged_count: int

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class SweepSummary:
    rows: Tuple[SummaryRow, ...] = ()

    def row(self, method: str, target_fidelity: Optional[float] = None) -> SummaryRow:
        for row in self.rows:
            if row.method == method and row.target_fidelity == target_fidelity:
                return row
        raise KeyError((method, target_fidelity))

    def mse_by_fidelity(self, method: str = "gasp") -> Dict[Optional[float], float]:
        return {r.target_fidelity: r.mse for r in self.rows if r.method == method}

    def to_dict(self) -> Dict:
        return {'rows': [r.to_dict() for r in self.rows]}


def _mean(values: Iterable[float]) -> float:
    values = list(values)
    return float(np.mean(values)) if values else 0.0


def summarize(records: Sequence[WindowRecord]) -> SweepSummary:
    """MSE and mean costs per (method, target fidelity), windows and seeds pooled."""
    groups = groupby(lambda r: (r.method, r.target_fidelity), records)
    rows = []
    for method, level in sorted(groups, key=lambda k: (k[0], fidelity_key(k[1]))):
        group = sorted(groups[(method, level)], key=record_sort_key)
        rows.append(SummaryRow(
            method=method,
            target_fidelity=level,
            count=len(group),
            mse=_mean(r.squared_error for r in group),
            mean_frobenius_error=_mean(pluck_attr('frobenius_error', group)),
            mean_achieved_fidelity=_mean(pluck_attr('achieved_fidelity', group)),
            mean_cnot_count=_mean(pluck_attr('cnot_count', group)),
            mean_gate_count=_mean(pluck_attr('gate_count', group)),
            mean_wall_time=_mean(pluck_attr('wall_time', group)),
            converged_count=sum(1 for r in group if r.converged),
        ))
    return SweepSummary(tuple(rows))


def records_frame(records: Sequence[WindowRecord]) -> pd.DataFrame:
    ordered = sorted(records, key=record_sort_key)
    return pd.DataFrame([r.to_row() for r in ordered], columns=list(RECORD_COLUMNS))


def column_label(method: str, target_fidelity: Optional[float]) -> str:
    return method if target_fidelity is None else f"{method}@{target_fidelity:.2f}"


def entropy_table(records: Sequence[WindowRecord]) -> pd.DataFrame:
    """Mean VQSVD entropy per window (rows) and method level (columns), oracle first."""
    if not records:
        return pd.DataFrame(columns=["window_label", "oracle"])
    frame = records_frame(records)
    frame["column"] = [column_label(m, _optional_float(f))
                       for m, f in zip(frame["method"], frame["target_fidelity"])]
    table = frame.pivot_table(index="window_label", columns="column",
                              values="entropy_vqsvd", aggfunc="mean")
    ordered = sorted(
        {(r.method, fidelity_key(r.target_fidelity), column_label(r.method, r.target_fidelity))
         for r in records}
    )
    table = table.reindex(columns=[label for _, _, label in ordered])
    oracle = frame.groupby("window_label")["entropy_oracle"].mean()
    table.insert(0, "oracle", oracle)
    table.columns.name = None
    return table.sort_index().reset_index()


def mse_curve(summary: SweepSummary) -> pd.DataFrame:
    return pd.DataFrame(
        [{'method': r.method, 'target_fidelity': r.target_fidelity, 'mse': r.mse,
          'mean_frobenius_error': r.mean_frobenius_error, 'count': r.count}
         for r in summary.rows],
        columns=['method', 'target_fidelity', 'mse', 'mean_frobenius_error', 'count'],
    )


def _write_json(data: Dict, path: Path) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def emit_plot_data(
    records: Sequence[WindowRecord],
    summary: SweepSummary,
    path: Union[str, Path],
    loss_traces: Optional[Dict[str, List[float]]] = None,
) -> List[Path]:
    """Write entropy table, MSE curve and (when given) loss traces."""
    path = Path(path)
    written = []
    try:
        path.mkdir(parents=True, exist_ok=True)
        entropy_table(records).to_csv(path / ENTROPY_TABLE_FILE, index=False)
        mse_curve(summary).to_csv(path / MSE_CURVE_FILE, index=False)
        written += [path / ENTROPY_TABLE_FILE, path / MSE_CURVE_FILE]
        if loss_traces is not None:
            _write_json({k: [float(x) for x in v] for k, v in loss_traces.items()},
                        path / LOSS_TRACES_FILE)
            written.append(path / LOSS_TRACES_FILE)
    except OSError as exc:
        raise OSError(f"Cannot write plot data to {path}: {exc}") from exc
    return written


def emit_results(
    records: Sequence[WindowRecord],
    summary: SweepSummary,
    path: Union[str, Path],
    config: Optional[Dict] = None,
    skipped: Sequence[SkippedCell] = (),
    plot_data: bool = False,
    loss_traces: Optional[Dict[str, List[float]]] = None,
) -> List[Path]:
    """
    Write records CSV and summary JSON into directory ``path``.

    Raises:
        OSError: naming the path when the directory or a file cannot be written.
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
        records_frame(records).to_csv(path / RECORDS_FILE, index=False)
        _write_json(
            {
                'config': config or {},
                'record_count': len(records),
                'skipped': [s.to_dict() for s in skipped],
                'summary': summary.to_dict(),
            },
            path / SUMMARY_FILE,
        )
    except OSError as exc:
        raise OSError(f"Cannot write results to {path}: {exc}") from exc
    written = [path / RECORDS_FILE, path / SUMMARY_FILE]
    if plot_data:
        written += emit_plot_data(records, summary, path, loss_traces)
    logger.info("Wrote %d records to %s", len(records), path)
    return written


def read_records(path: Union[str, Path]) -> List[WindowRecord]:
    """Parse a records CSV (or the one inside a results directory)."""
    path = Path(path)
    if path.is_dir():
        path = path / RECORDS_FILE
    try:
        frame = pd.read_csv(
            path,
            float_precision="round_trip",
            dtype={'window_label': str, 'method': str},
        )
    except OSError as exc:
        raise OSError(f"Cannot read records from {path}: {exc}") from exc
    return [WindowRecord.from_row(row) for row in frame.to_dict(orient="records")]


def read_summary(path: Union[str, Path]) -> Dict:
    path = Path(path)
    if path.is_dir():
        path = path / SUMMARY_FILE
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
