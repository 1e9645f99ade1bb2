"""
One sweep cell: (window, method, fidelity level, seed) run as a stage pipeline.

    build_panel -> prepare_state -> solve_spectrum -> make_record

Each stage takes and returns a plain dict context, extended with toolz.assoc
and toolz.merge.
"""

import logging
import time
from dataclasses import dataclass, replace
from typing import Dict, List, Optional

import numpy as np
from toolz import assoc, merge

from ..config.schemas.experiment_schema import ExperimentPlan, Method
from ..core.aae import train_aae
from ..core.gasp import synthesize
from ..core.market.prices import PriceTable
from ..core.market.returns import (
    build_return_panel,
    correlation_matrix,
    data_statevector,
    register_sizes,
)
from ..core.market.spectrum import svd_entropy_oracle
from ..core.pipelines import Pipeline
from ..core.sim.circuit import apply_circuit
from ..core.sim.statevector import StateVector, fidelity
from ..core.vqsvd import AnsatzSpec, CostMode, run_vqsvd
from ..utils.errors import DegenerateDataError, DegenerateExtractionError, ShapeError
from ..utils.seeding import derive_seed
from .records import SkippedCell, WindowRecord, cell_key

logger = logging.getLogger(__name__)

SKIPPABLE = (DegenerateDataError, ShapeError, DegenerateExtractionError)


@dataclass(frozen=True, eq=False)
class CellJob:
    window_index: int
    window_label: str
    table: PriceTable
    method: Method
    target_fidelity: Optional[float]
    fidelity_index: int
    seed: int
    plan: ExperimentPlan

    @property
    def cell_seed(self) -> int:
        """Stream seed independent of which other methods or levels the plan holds."""
        return derive_seed(self.seed, self.window_index, self.method.value, self.fidelity_index)

    @property
    def key(self) -> str:
        return cell_key(self.window_label, self.method.value, self.target_fidelity, self.seed)


@dataclass(frozen=True, eq=False)
class CellOutcome:
    key: str
    record: Optional[WindowRecord] = None
    skipped: Optional[SkippedCell] = None
    loss_trace: Optional[List[float]] = None
    amplitudes: Optional[List[float]] = None


def build_panel(ctx: Dict) -> Dict:
    job: CellJob = ctx['job']
    panel = build_return_panel(job.table.all_series(), job.table.dates)
    correlation = correlation_matrix(panel)
    ctx = assoc(ctx, 'n_s', register_sizes(panel)[0])
    ctx = assoc(ctx, 'correlation', correlation)
    ctx = assoc(ctx, 'oracle', svd_entropy_oracle(correlation))
    return assoc(ctx, 'target', data_statevector(panel))


def prepare_state(ctx: Dict) -> Dict:
    """Preparation for VQSVD: synthesized circuit or the ideal state."""
    job: CellJob = ctx['job']
    target: StateVector = ctx['target']
    if job.method is Method.EXACT:
        return merge(ctx, {
            'preparation': target,
            'prepared': target,
            'achieved_fidelity': 1.0,
            'converged': True,
            'cnot_count': 0,
            'gate_count': 0,
        })

    if job.method is Method.GASP:
        config = replace(job.plan.ga, target_fidelity=job.target_fidelity, seed=job.cell_seed)
        result = synthesize(target, config)
        circuit, converged = result.circuit, result.converged
    else:
        result = train_aae(target, replace(job.plan.aae, seed=job.cell_seed))
        circuit, converged = result.circuit, True

    prepared = apply_circuit(StateVector.zero(target.n_qubits), circuit)
    return merge(ctx, {
        'preparation': circuit,
        'prepared': prepared,
        'achieved_fidelity': fidelity(prepared, target),
        'converged': converged,
        'cnot_count': circuit.cnot_count,
        'gate_count': circuit.gate_count,
    })


def solve_spectrum(ctx: Dict) -> Dict:
    job: CellJob = ctx['job']
    result = run_vqsvd(
        ctx['preparation'],
        AnsatzSpec(ctx['n_s'], job.plan.vqsvd_layers),
        replace(job.plan.spsa, seed=job.cell_seed),
        mode=CostMode(job.plan.shots, job.cell_seed),
        ideal_correlation=ctx['correlation'],
        restarts=job.plan.vqsvd_restarts,
    )
    return assoc(ctx, 'vqsvd', result)


def make_record(ctx: Dict) -> Dict:
    job: CellJob = ctx['job']
    vqsvd = ctx['vqsvd']
    record = WindowRecord(
        window_label=job.window_label,
        method=job.method.value,
        target_fidelity=job.target_fidelity,
        achieved_fidelity=ctx['achieved_fidelity'],
        entropy_vqsvd=vqsvd.entropy,
        entropy_oracle=ctx['oracle'].entropy,
        frobenius_error=vqsvd.frobenius_error,
        cnot_count=ctx['cnot_count'],
        gate_count=ctx['gate_count'],
        seed=job.seed,
        wall_time=time.perf_counter() - ctx['started'] if job.plan.record_wall_time else 0.0,
        converged=ctx['converged'],
        leaked_mass=vqsvd.leaked_mass,
        frobenius_error_ideal=vqsvd.frobenius_error_ideal,
    )
    return assoc(ctx, 'record', record)


CELL_PIPELINE = Pipeline(build_panel, prepare_state, solve_spectrum, make_record)
_run_stages = CELL_PIPELINE.timed().as_function()


def _dephased(state: StateVector) -> List[float]:
    """Real parts after rotating the largest amplitude onto the positive axis."""
    amplitudes = state.amplitudes
    pivot = amplitudes[int(np.argmax(np.abs(amplitudes)))]
    return [float(a) for a in np.real(amplitudes * np.conj(pivot) / abs(pivot))]


def run_cell(job: CellJob) -> CellOutcome:
    """Run one cell; degenerate data or extraction becomes a skipped entry."""
    try:
        ctx = _run_stages({'job': job, 'started': time.perf_counter()})
    except SKIPPABLE as exc:
        logger.info("Skipping %s: %s", job.key, exc)
        return CellOutcome(
            key=job.key,
            skipped=SkippedCell(job.window_label, job.method.value, job.target_fidelity,
                                job.seed, f"{type(exc).__name__}: {exc}"),
        )
    record: WindowRecord = ctx['record']
    logger.info("Finished %s: entropy %.6f (oracle %.6f)", job.key,
                record.entropy_vqsvd, record.entropy_oracle)
    return CellOutcome(
        key=job.key,
        record=record,
        loss_trace=list(ctx['vqsvd'].loss_trace),
        amplitudes=_dephased(ctx['prepared']),
    )
