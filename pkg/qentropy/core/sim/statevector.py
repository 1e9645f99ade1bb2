"""
Dense statevector and reduced-state functions.

Qubit 0 is the most significant bit of a basis index. For a bipartite
register the first ``n_first`` qubits form the stock register and the rest
the time register, so amplitude ``n * 2**t_s + t`` belongs to |n>|t>.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from ...utils.errors import ArgumentError, CircuitError

NORM_TOLERANCE = 1e-10


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure n-qubit state; the amplitude array is read-only."""
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = _frozen(np.ravel(self.amplitudes))
        if amplitudes.shape[0] != 1 << self.n_qubits:
            raise ArgumentError(
                f"{self.n_qubits} qubits need {1 << self.n_qubits} amplitudes, "
                f"got {amplitudes.shape[0]}"
            )
        norm = float(np.sum(np.abs(amplitudes) ** 2))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ArgumentError(f"State is not normalized (norm^2={norm:.12g})")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        """The |0...0> state."""
        return cls.basis(n_qubits, 0)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "StateVector":
        amplitudes = np.zeros(1 << n_qubits, dtype=complex)
        amplitudes[index] = 1.0
        return cls(n_qubits, amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> "StateVector":
        """Build a state, inferring the qubit count from the vector length."""
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        dim = amplitudes.shape[0]
        n_qubits = dim.bit_length() - 1
        if dim == 0 or 1 << n_qubits != dim:
            raise ArgumentError(f"Amplitude count {dim} is not a power of two")
        if normalize:
            norm = np.linalg.norm(amplitudes)
            if norm == 0:
                raise ArgumentError("Cannot normalize the zero vector")
            amplitudes = amplitudes / norm
        return cls(n_qubits, amplitudes)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.amplitudes.imag) <= NORM_TOLERANCE))

    def tensor(self) -> np.ndarray:
        """Writable copy shaped (2,)*n, axis q is qubit q."""
        return np.array(self.amplitudes).reshape((2,) * self.n_qubits)

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator."""
    dim: int
    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen(self.entries)
        if entries.shape != (self.dim, self.dim):
            raise ArgumentError(f"Expected a {self.dim}x{self.dim} matrix, got {entries.shape}")
        object.__setattr__(self, "entries", entries)

    def eigenvalues(self) -> np.ndarray:
        """Descending eigenvalues."""
        return np.linalg.eigvalsh(self.entries)[::-1]


def _check_same_size(a: StateVector, b: StateVector) -> None:
    if a.n_qubits != b.n_qubits:
        raise CircuitError(f"Qubit counts differ: {a.n_qubits} vs {b.n_qubits}")


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, insensitive to global phase."""
    _check_same_size(a, b)
    overlap = np.vdot(a.amplitudes, b.amplitudes)
    return float(min(1.0, abs(overlap) ** 2))


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.n_qubits:
        raise CircuitError(f"Qubit {qubit} out of range for {state.n_qubits} qubits")


def parity_signs(n_qubits: int, q1: int, q2: int) -> np.ndarray:
    """+1 where bits q1 and q2 of the basis index agree, -1 otherwise."""
    index = np.arange(1 << n_qubits)
    bit1 = (index >> (n_qubits - 1 - q1)) & 1
    bit2 = (index >> (n_qubits - 1 - q2)) & 1
    return np.where(bit1 == bit2, 1.0, -1.0)


def expectation_zz(state: StateVector, q1: int, q2: int) -> float:
    """<Z_q1 Z_q2> computed from basis probabilities."""
    _check_qubit(state, q1)
    _check_qubit(state, q2)
    if q1 == q2:
        raise CircuitError("expectation_zz needs two distinct qubits")
    low, high = sorted((q1, q2))
    return float(np.dot(state.probabilities, parity_signs(state.n_qubits, low, high)))


def sample_counts(state: StateVector, shots: int, seed: int) -> Dict[int, int]:
    """Computational-basis measurement counts keyed by basis index."""
    if shots < 1:
        raise ArgumentError(f"shots must be positive, got {shots}")
    probabilities = state.probabilities
    probabilities = probabilities / probabilities.sum()
    counts = np.random.default_rng(seed).multinomial(shots, probabilities)
    return {int(index): int(counts[index]) for index in np.flatnonzero(counts)}


def _bipartite_matrix(state: StateVector, n_first: int) -> np.ndarray:
    if not 0 < n_first < state.n_qubits:
        raise ArgumentError(
            f"n_first must lie in 1..{state.n_qubits - 1}, got {n_first}"
        )
    return state.amplitudes.reshape(1 << n_first, -1)


def partial_trace_second(state: StateVector, n_first: int) -> DensityMatrix:
    """Trace out every qubit after the first ``n_first``."""
    block = _bipartite_matrix(state, n_first)
    rho = block @ block.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(block.shape[0], rho)


def schmidt_values(state: StateVector, n_first: int) -> np.ndarray:
    """Squared Schmidt coefficients, descending, summing to 1."""
    block = _bipartite_matrix(state, n_first)
    values = np.linalg.svd(block, compute_uv=False) ** 2
    padded = np.zeros(block.shape[0])
    padded[: values.shape[0]] = values
    return np.sort(padded)[::-1]


def von_neumann_entropy(density: DensityMatrix, cutoff: float = 1e-12) -> float:
    """-Tr(rho ln rho) in nats."""
    eigenvalues = density.eigenvalues()
    positive = eigenvalues[eigenvalues > cutoff]
    return float(-np.sum(positive * np.log(positive)))


def as_real_target(target) -> StateVector:
    """Accept a StateVector or amplitude array; reject complex or unnormalized input."""
    if not isinstance(target, StateVector):
        amplitudes = np.asarray(target)
        norm = float(np.sum(np.abs(amplitudes) ** 2)) if amplitudes.size else 0.0
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ArgumentError(f"Target is not normalized (norm^2={norm:.12g})")
        target = StateVector.from_amplitudes(amplitudes)
    if not target.is_real:
        raise ArgumentError("Target amplitudes must be real")
    return target
