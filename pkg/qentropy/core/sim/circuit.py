"""
Gate instructions, circuits and their action on statevectors.

Gates are applied by contracting a small matrix against the state tensor
(one axis per qubit), the same permutation-free scheme a dense backend uses.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ...utils.errors import CircuitError
from .statevector import StateVector


class GateKind(Enum):
    """Supported gate alphabet."""
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    H = "H"
    CNOT = "CNOT"
    CZ = "CZ"

    @property
    def is_rotation(self) -> bool:
        return self in (GateKind.RX, GateKind.RY, GateKind.RZ)

    @property
    def is_controlled(self) -> bool:
        return self in (GateKind.CNOT, GateKind.CZ)


_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def gate_matrix(kind: GateKind, angle: Optional[float] = None) -> np.ndarray:
    """2x2 matrix of a single-qubit gate, or of the controlled part of CNOT/CZ."""
    if kind is GateKind.H:
        return _HADAMARD
    if kind is GateKind.CNOT:
        return _PAULI_X
    if kind is GateKind.CZ:
        return _PAULI_Z
    half = 0.5 * angle
    c, s = math.cos(half), math.sin(half)
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RX:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    return np.array([[complex(c, -s), 0], [0, complex(c, s)]], dtype=complex)


@dataclass(frozen=True)
class GateInstruction:
    """One gate: kind, target qubit, optional control and rotation angle."""
    kind: GateKind
    target: int
    control: Optional[int] = None
    angle: Optional[float] = None

    def __post_init__(self):
        if self.kind.is_controlled:
            if self.control is None:
                raise CircuitError(f"{self.kind.value} needs a control qubit")
            if self.control == self.target:
                raise CircuitError(f"{self.kind.value} control equals target ({self.target})")
        elif self.control is not None:
            raise CircuitError(f"{self.kind.value} takes no control qubit")
        if self.kind.is_rotation:
            if self.angle is None:
                raise CircuitError(f"{self.kind.value} needs an angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise CircuitError(f"{self.kind.value} takes no angle")

    @property
    def qubits(self) -> Tuple[int, ...]:
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)

    def shifted(self, offset: int) -> "GateInstruction":
        return GateInstruction(
            self.kind,
            self.target + offset,
            None if self.control is None else self.control + offset,
            self.angle,
        )

    def to_dict(self) -> Dict:
        record = {'kind': self.kind.value, 'target': self.target}
        if self.control is not None:
            record['control'] = self.control
        if self.angle is not None:
            record['angle'] = self.angle
        return record

    @classmethod
    def from_dict(cls, record: Dict) -> "GateInstruction":
        return cls(
            kind=GateKind(record['kind']),
            target=int(record['target']),
            control=record.get('control'),
            angle=record.get('angle'),
        )


@dataclass(frozen=True)
class GateCircuit:
    """Ordered gate list over ``n_qubits`` qubits."""
    n_qubits: int
    instructions: Tuple[GateInstruction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))

    @property
    def cnot_count(self) -> int:
        return sum(1 for ins in self.instructions if ins.kind is GateKind.CNOT)

    @property
    def gate_count(self) -> int:
        return len(self.instructions)

    def validate(self) -> None:
        """Raise CircuitError naming the first instruction with a bad index."""
        for position, ins in enumerate(self.instructions):
            for qubit in ins.qubits:
                if not 0 <= qubit < self.n_qubits:
                    raise CircuitError(
                        f"Instruction {position} ({ins.kind.value}) uses qubit {qubit} "
                        f"outside 0..{self.n_qubits - 1}",
                        position=position,
                    )

    def embed(self, n_qubits: int, offset: int = 0) -> "GateCircuit":
        """Same gates on qubits ``offset..offset+self.n_qubits-1`` of a wider register."""
        if offset < 0 or offset + self.n_qubits > n_qubits:
            raise CircuitError(
                f"Cannot place {self.n_qubits} qubits at offset {offset} in {n_qubits}"
            )
        return GateCircuit(n_qubits, tuple(ins.shifted(offset) for ins in self.instructions))

    def compose(self, other: "GateCircuit") -> "GateCircuit":
        """This circuit followed by ``other``."""
        if other.n_qubits != self.n_qubits:
            raise CircuitError(
                f"Cannot compose {self.n_qubits}- and {other.n_qubits}-qubit circuits"
            )
        return GateCircuit(self.n_qubits, self.instructions + other.instructions)


def _apply_single(psi: np.ndarray, matrix: np.ndarray, target: int) -> np.ndarray:
    psi = np.tensordot(matrix, psi, axes=([1], [target]))
    return np.moveaxis(psi, 0, target)


def _apply_controlled(psi: np.ndarray, matrix: np.ndarray, control: int, target: int) -> np.ndarray:
    index: List = [slice(None)] * psi.ndim
    index[control] = 1
    index = tuple(index)
    sub_target = target if target < control else target - 1
    psi[index] = _apply_single(psi[index], matrix, sub_target)
    return psi


def apply_circuit(state: StateVector, circuit: GateCircuit) -> StateVector:
    """Unitary image of ``state``; the input is left untouched."""
    if circuit.n_qubits != state.n_qubits:
        raise CircuitError(
            f"Circuit acts on {circuit.n_qubits} qubits, state has {state.n_qubits}"
        )
    circuit.validate()
    psi = state.tensor()
    for ins in circuit.instructions:
        matrix = gate_matrix(ins.kind, ins.angle)
        if ins.control is None:
            psi = _apply_single(psi, matrix, ins.target)
        else:
            psi = _apply_controlled(psi, matrix, ins.control, ins.target)
    # not renormalized; StateVector checks the norm
    return StateVector(state.n_qubits, psi.reshape(-1))


def circuit_unitary(circuit: GateCircuit) -> np.ndarray:
    """Matrix of the circuit; column k is the image of basis state |k>."""
    dim = 1 << circuit.n_qubits
    columns = [
        apply_circuit(StateVector.basis(circuit.n_qubits, k), circuit).amplitudes
        for k in range(dim)
    ]
    return np.stack(columns, axis=1)


def hadamard_layer(n_qubits: int) -> GateCircuit:
    return circuit_from_gates(n_qubits, [("H", q) for q in range(n_qubits)])


def hadamard_probabilities(state: StateVector) -> np.ndarray:
    """Basis probabilities after a Hadamard on every qubit."""
    return apply_circuit(state, hadamard_layer(state.n_qubits)).probabilities


def circuit_to_dict(circuit: GateCircuit, method: Optional[str] = None) -> Dict:
    """JSON-ready record: n_qubits, instruction list and optional method tag."""
    record = {
        'n_qubits': circuit.n_qubits,
        'instructions': [ins.to_dict() for ins in circuit.instructions],
    }
    if method is not None:
        record['method'] = method
    return record


def circuit_from_dict(record: Dict) -> GateCircuit:
    return GateCircuit(
        n_qubits=int(record['n_qubits']),
        instructions=tuple(GateInstruction.from_dict(r) for r in record['instructions']),
    )


def circuit_from_gates(n_qubits: int, gates: Iterable[Tuple]) -> GateCircuit:
    """Shorthand builder: ``("RY", q, angle)``, ``("CNOT", control, target)``, ``("H", q)``."""
    instructions = []
    for gate in gates:
        kind = GateKind(gate[0])
        if kind.is_controlled:
            instructions.append(GateInstruction(kind, target=gate[2], control=gate[1]))
        elif kind.is_rotation:
            instructions.append(GateInstruction(kind, target=gate[1], angle=gate[2]))
        else:
            instructions.append(GateInstruction(kind, target=gate[1]))
    return GateCircuit(n_qubits, tuple(instructions))
