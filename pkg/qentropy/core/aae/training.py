"""
Approximate amplitude encoding.

A fixed RY/CNOT ansatz is trained with SPSA so that its output distribution
matches the target's in the computational basis and, after a Hadamard on
every qubit, in the X basis. The second term fixes amplitude signs that
the first cannot see.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Union

import numpy as np

from ...config.schemas.optimizer_schema import AaeConfig
from ...utils.errors import ArgumentError
from ...utils.seeding import derive_seed, make_rng
from ..sim.circuit import (
    GateCircuit,
    GateInstruction,
    GateKind,
    apply_circuit,
    circuit_to_dict,
    hadamard_layer,
    hadamard_probabilities,
)
from ..sim.statevector import StateVector, as_real_target, fidelity, sample_counts
from ..vqsvd.spsa import spsa_minimize
from .mmd import mmd_cost

logger = logging.getLogger(__name__)


def aae_parameter_count(n_qubits: int, layers: int) -> int:
    return n_qubits * (layers + 1)


def build_aae_ansatz(n_qubits: int, layers: int, params) -> GateCircuit:
    """Initial RY layer, then ``layers`` x (CNOT chain q -> q+1, RY layer)."""
    params = np.asarray(params, dtype=float).ravel()
    expected = aae_parameter_count(n_qubits, layers)
    if params.shape[0] != expected:
        raise ArgumentError(f"AAE ansatz expects {expected} parameters, got {params.shape[0]}")
    angles = iter(params)
    instructions = [GateInstruction(GateKind.RY, q, angle=next(angles)) for q in range(n_qubits)]
    for _ in range(layers):
        instructions.extend(
            GateInstruction(GateKind.CNOT, q + 1, control=q) for q in range(n_qubits - 1)
        )
        instructions.extend(
            GateInstruction(GateKind.RY, q, angle=next(angles)) for q in range(n_qubits)
        )
    return GateCircuit(n_qubits, tuple(instructions))


@dataclass(frozen=True, eq=False)
class AaeResult:
    circuit: GateCircuit
    achieved_fidelity: float
    loss_trace: List[float] = field(default_factory=list)
    params: np.ndarray = field(default_factory=lambda: np.zeros(0))
    initial_loss: float = 0.0
    final_loss: float = 0.0
    wall_time: float = 0.0

    def to_dict(self, include_wall_time: bool = False) -> Dict:
        return {
            'circuit': circuit_to_dict(self.circuit, method="aae"),
            'achieved_fidelity': self.achieved_fidelity,
            'params': [float(x) for x in self.params],
            'loss_trace': [float(x) for x in self.loss_trace],
            'initial_loss': self.initial_loss,
            'final_loss': self.final_loss,
            'wall_time': self.wall_time if include_wall_time else 0.0,
        }


def _frequencies(state: StateVector, shots: int, seed: int) -> np.ndarray:
    frequencies = np.zeros(state.dim)
    for index, count in sample_counts(state, shots, seed).items():
        frequencies[index] = count / shots
    return frequencies


def _hadamard_state(state: StateVector) -> StateVector:
    return apply_circuit(state, hadamard_layer(state.n_qubits))


class AaeObjective:
    """Dual-basis MMD cost of the ansatz output against a fixed target."""

    def __init__(self, target: StateVector, config: AaeConfig):
        self.n_qubits = target.n_qubits
        self.config = config
        self.p_z = target.probabilities
        self.p_x = hadamard_probabilities(target)
        self._evaluations = itertools.count()

    def state(self, params) -> StateVector:
        circuit = build_aae_ansatz(self.n_qubits, self.config.layers, params)
        return apply_circuit(StateVector.zero(self.n_qubits), circuit)

    def exact(self, params) -> float:
        return self._cost(self.state(params), shots=None)

    def __call__(self, params) -> float:
        return self._cost(self.state(params), shots=self.config.shots)

    def _cost(self, state: StateVector, shots) -> float:
        grid = self.config.kernel_sigma_grid
        if shots is None:
            q_z = state.probabilities
            q_x = hadamard_probabilities(state) if self.config.hadamard_term else None
        else:
            evaluation = next(self._evaluations)
            q_z = _frequencies(state, shots, derive_seed(self.config.seed, "z", evaluation))
            q_x = None
            if self.config.hadamard_term:
                q_x = _frequencies(
                    _hadamard_state(state), shots, derive_seed(self.config.seed, "x", evaluation)
                )
        cost = mmd_cost(q_z / q_z.sum(), self.p_z / self.p_z.sum(), grid)
        if q_x is not None:
            cost += mmd_cost(q_x / q_x.sum(), self.p_x / self.p_x.sum(), grid)
        return cost


def train_aae(target: Union[StateVector, np.ndarray], config: AaeConfig) -> AaeResult:
    """
    Train the AAE ansatz to load ``target``.

    Raises:
        ArgumentError: complex or unnormalized target.
    """
    target = as_real_target(target)
    started = time.perf_counter()
    objective = AaeObjective(target, config)
    count = aae_parameter_count(target.n_qubits, config.layers)
    x0 = make_rng(config.seed, "aae-init").uniform(-np.pi, np.pi, size=count)

    best, trace = spsa_minimize(objective, x0, config.spsa())
    circuit = build_aae_ansatz(target.n_qubits, config.layers, best)
    prepared = apply_circuit(StateVector.zero(target.n_qubits), circuit)
    result = AaeResult(
        circuit=circuit,
        achieved_fidelity=fidelity(prepared, target),
        loss_trace=list(trace),
        params=best,
        initial_loss=objective.exact(x0),
        final_loss=objective.exact(best),
        wall_time=time.perf_counter() - started,
    )
    logger.info(
        "AAE finished: %d layers, loss %.4g -> %.4g, fidelity %.6f",
        config.layers, result.initial_loss, result.final_loss, result.achieved_fidelity,
    )
    return result
