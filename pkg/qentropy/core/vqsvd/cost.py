"""
Hamming-distance cost between the stock and time registers.

    L = sum_q (1 - <Z_q Z_{q+n_s}>) / 2,   q = 0..n_s-1

evaluated on (U x V) |prep>. L is zero exactly when the state is supported
on matched pairs |j>|j>.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Union

import numpy as np

from ...utils.errors import ArgumentError, CircuitError
from ..sim.circuit import GateCircuit, apply_circuit
from ..sim.statevector import StateVector, parity_signs, sample_counts
from .ansatz import AnsatzSpec, ParamVector, register_pair_circuit

Preparation = Union[GateCircuit, StateVector]


@dataclass(frozen=True)
class CostMode:
    """Exact expectation values, or estimates from ``shots`` samples."""
    shots: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.shots is not None and self.shots < 1:
            raise ArgumentError(f"shots must be positive, got {self.shots}")

    @classmethod
    def exact(cls) -> "CostMode":
        return cls()

    @property
    def is_exact(self) -> bool:
        return self.shots is None

    def reseeded(self, seed: int) -> "CostMode":
        return CostMode(self.shots, seed)


def prepared_state(data_prep: Preparation) -> StateVector:
    """Run a preparation circuit on |0...0>, or pass a ready state through."""
    if isinstance(data_prep, StateVector):
        return data_prep
    return apply_circuit(StateVector.zero(data_prep.n_qubits), data_prep)


def check_registers(state: StateVector, ansatz: AnsatzSpec) -> None:
    if state.n_qubits != 2 * ansatz.n_qubits_per_register:
        raise CircuitError(
            f"Prepared state has {state.n_qubits} qubits; two registers of "
            f"{ansatz.n_qubits_per_register} need {2 * ansatz.n_qubits_per_register}"
        )


def hamming_signs(n_s: int) -> np.ndarray:
    """Rows q: +1/-1 parity of qubit pair (q, q+n_s) for every basis index."""
    return np.stack([parity_signs(2 * n_s, q, q + n_s) for q in range(n_s)])


def cost_from_probabilities(probabilities: np.ndarray, n_s: int) -> float:
    correlators = hamming_signs(n_s) @ probabilities
    return float(np.sum((1.0 - correlators) / 2.0))


def cost_from_counts(counts: Dict[int, int], n_s: int) -> float:
    """Estimate from one shared sample set of computational-basis outcomes."""
    frequencies = np.zeros(1 << (2 * n_s))
    shots = sum(counts.values())
    for index, count in counts.items():
        frequencies[index] = count / shots
    return cost_from_probabilities(frequencies, n_s)


def transformed_state(state: StateVector, params: ParamVector, ansatz: AnsatzSpec) -> StateVector:
    """(U x V) |state>."""
    check_registers(state, ansatz)
    return apply_circuit(state, register_pair_circuit(ansatz, params))


def state_cost(state: StateVector, mode: CostMode, n_s: int) -> float:
    if mode.is_exact:
        return cost_from_probabilities(state.probabilities, n_s)
    return cost_from_counts(sample_counts(state, mode.shots, mode.seed), n_s)


def svd_cost(
    data_prep: Preparation,
    params: ParamVector,
    ansatz: AnsatzSpec,
    mode: CostMode = CostMode(),
) -> float:
    """Cost in [0, n_s] of the transformed prepared state."""
    state = transformed_state(prepared_state(data_prep), params, ansatz)
    return state_cost(state, mode, ansatz.n_qubits_per_register)
