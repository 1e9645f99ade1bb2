"""
Variational Schmidt decomposition of a prepared bipartite state.

After optimization, (U x V)|prep> is close to sum_j c_j |j>|j>. The weights
|c_j|^2 are read from the matched-pair amplitudes, the stock-register
Schmidt basis is U^dagger |j>, and the correlation matrix is rebuilt as
U^dagger diag(w) U.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Union

import numpy as np

from ...config.schemas.optimizer_schema import SpsaConfig
from ...utils.errors import ArgumentError, DegenerateExtractionError
from ...utils.seeding import derive_seed, make_rng
from ..market.returns import CorrelationMatrix
from ..market.spectrum import entropy_from_weights
from ..sim.circuit import circuit_unitary
from ..sim.statevector import StateVector, partial_trace_second
from .ansatz import AnsatzSpec, ParamVector, build_ansatz
from .cost import (
    CostMode,
    Preparation,
    check_registers,
    prepared_state,
    state_cost,
    transformed_state,
)
from .spsa import spsa_minimize

logger = logging.getLogger(__name__)

EXTRACTIONS = ("matched", "marginal")
MIN_EXTRACTED_MASS = 1e-6
DEFAULT_RESTARTS = 4


@dataclass(frozen=True, eq=False)
class VqsvdResult:
    """Optimized angles, extracted Schmidt weights and reconstruction errors."""
    params: ParamVector
    loss_trace: List[float]
    schmidt_weights: np.ndarray
    entropy: float
    frobenius_error: float
    leaked_mass: float
    initial_loss: float
    final_loss: float
    reconstructed: np.ndarray
    frobenius_error_ideal: Optional[float] = None
    wall_time: float = 0.0
    ansatz: Optional[AnsatzSpec] = None
    spsa: Optional[SpsaConfig] = None
    mode: CostMode = field(default_factory=CostMode)
    extraction: str = "matched"
    restarts: int = 1

    def to_dict(self, include_wall_time: bool = False) -> Dict:
        return {
            'config': {
                'n_qubits_per_register': self.ansatz.n_qubits_per_register if self.ansatz else None,
                'layers': self.ansatz.layers if self.ansatz else None,
                'spsa': self.spsa.to_dict() if self.spsa else None,
                'shots': self.mode.shots,
                'shot_seed': self.mode.seed,
                'extraction': self.extraction,
                'restarts': self.restarts,
            },
            'params': self.params.to_dict(),
            'loss_trace': [float(x) for x in self.loss_trace],
            'initial_loss': self.initial_loss,
            'final_loss': self.final_loss,
            'schmidt_weights': [float(x) for x in self.schmidt_weights],
            'entropy': self.entropy,
            'frobenius_error': self.frobenius_error,
            'frobenius_error_ideal': self.frobenius_error_ideal,
            'leaked_mass': self.leaked_mass,
            'wall_time': self.wall_time if include_wall_time else 0.0,
        }


def reconstruct_correlation(u_matrix: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """U^dagger diag(w) U, with w indexed by computational basis state."""
    u_matrix = np.asarray(u_matrix)
    return u_matrix.conj().T @ np.diag(np.asarray(weights, dtype=float)) @ u_matrix


def matched_pair_probabilities(state: StateVector, n_s: int) -> np.ndarray:
    """|<j,j|state>|^2 for every register basis state j."""
    dim = 1 << n_s
    return state.probabilities.reshape(dim, dim).diagonal().copy()


def marginal_probabilities(state: StateVector, n_s: int) -> np.ndarray:
    """Stock-register marginal distribution."""
    dim = 1 << n_s
    return state.probabilities.reshape(dim, dim).sum(axis=1)


def _ideal_matrix(ideal: Union[CorrelationMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(ideal, CorrelationMatrix):
        return ideal.c
    return np.asarray(ideal)


def run_vqsvd(
    data_prep: Preparation,
    ansatz: AnsatzSpec,
    spsa: SpsaConfig,
    mode: CostMode = CostMode(),
    initial_params: Optional[ParamVector] = None,
    ideal_correlation: Optional[Union[CorrelationMatrix, np.ndarray]] = None,
    extraction: str = "matched",
    restarts: int = DEFAULT_RESTARTS,
) -> VqsvdResult:
    """
    Optimize U(theta) x V(theta') on the prepared state and extract the spectrum.

    Without ``initial_params`` SPSA runs from ``restarts`` random starts and
    the run with the lowest final loss is kept. Given ``initial_params``, a
    single run starts there.
    """
    if extraction not in EXTRACTIONS:
        raise ArgumentError(f"extraction must be one of {EXTRACTIONS}, got {extraction!r}")
    started = time.perf_counter()
    n_s = ansatz.n_qubits_per_register
    state = prepared_state(data_prep)
    check_registers(state, ansatz)

    if restarts < 1:
        raise ArgumentError(f"restarts must be at least 1, got {restarts}")
    if initial_params is not None:
        starts = [initial_params]
    else:
        starts = [ParamVector.random(ansatz, make_rng(spsa.seed, "vqsvd-init", r))
                  for r in range(restarts)]
    evaluations = itertools.count()

    def objective(flat: np.ndarray) -> float:
        params = ParamVector.from_flat(ansatz, flat)
        eval_mode = mode
        if not mode.is_exact:
            eval_mode = mode.reseeded(derive_seed(mode.seed, next(evaluations)))
        return state_cost(transformed_state(state, params, ansatz), eval_mode, n_s)

    def exact_cost(params: ParamVector) -> float:
        return state_cost(transformed_state(state, params, ansatz), CostMode.exact(), n_s)

    runs = []
    for r, start in enumerate(starts):
        config = spsa if r == 0 else replace(spsa, seed=derive_seed(spsa.seed, "restart", r))
        best_flat, trace = spsa_minimize(objective, start.flat(), config)
        runs.append((objective(best_flat), r, best_flat, trace))
    # lowest estimated loss wins; ties go to the earlier restart
    _, chosen, best_flat, trace = min(runs, key=lambda run: (run[0], run[1]))
    initial_params = starts[chosen]
    best = ParamVector.from_flat(ansatz, best_flat)
    if len(starts) > 1:
        logger.debug("Restart %d of %d kept", chosen, len(starts))

    final_state = transformed_state(state, best, ansatz)
    if extraction == "matched":
        probabilities = matched_pair_probabilities(final_state, n_s)
    else:
        probabilities = marginal_probabilities(final_state, n_s)
    mass = float(probabilities.sum())
    if mass < MIN_EXTRACTED_MASS:
        raise DegenerateExtractionError(
            f"Only {mass:.3g} probability on matched pairs; optimization failed"
        )
    weights_by_index = probabilities / mass

    u_matrix = circuit_unitary(build_ansatz(ansatz, best.theta_u))
    reconstructed = reconstruct_correlation(u_matrix, weights_by_index)
    target = partial_trace_second(state, n_s).entries
    ideal_error = None
    if ideal_correlation is not None:
        ideal_error = float(np.linalg.norm(reconstructed - _ideal_matrix(ideal_correlation)))

    result = VqsvdResult(
        params=best,
        loss_trace=list(trace),
        schmidt_weights=np.sort(weights_by_index)[::-1],
        entropy=entropy_from_weights(weights_by_index),
        frobenius_error=float(np.linalg.norm(reconstructed - target)),
        leaked_mass=max(0.0, 1.0 - mass),
        initial_loss=exact_cost(initial_params),
        final_loss=exact_cost(best),
        reconstructed=reconstructed,
        frobenius_error_ideal=ideal_error,
        wall_time=time.perf_counter() - started,
        ansatz=ansatz,
        spsa=spsa,
        mode=mode,
        extraction=extraction,
        restarts=len(starts),
    )
    logger.info(
        "VQSVD finished: loss %.4g -> %.4g, entropy %.6f, leaked %.3g",
        result.initial_loss, result.final_loss, result.entropy, result.leaked_mass,
    )
    return result
