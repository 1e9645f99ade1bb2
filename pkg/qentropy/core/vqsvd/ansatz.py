"""
Layered hardware-efficient ansatz for the U and V register unitaries.

Each layer puts RZ then RY on every register qubit, followed by a CNOT chain
q -> q+1 across the register.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from ...utils.errors import ArgumentError
from ..sim.circuit import GateCircuit, GateInstruction, GateKind


@dataclass(frozen=True)
class AnsatzSpec:
    """
    Register width (stock and time registers are equal) and layer count.

    The CNOT chain closing a layer permutes both registers alike, so one
    layer only reaches product Schmidt bases; three layers give two
    effective entangling chains.
    """
    n_qubits_per_register: int
    layers: int = 3

    def __post_init__(self):
        if self.n_qubits_per_register < 1:
            raise ArgumentError("Ansatz needs at least one qubit per register")
        if self.layers < 1:
            raise ArgumentError("Ansatz needs at least one layer")

    @property
    def parameter_count(self) -> int:
        """Per register: layers x 2 x qubits."""
        return self.layers * 2 * self.n_qubits_per_register


@dataclass(frozen=True, eq=False)
class ParamVector:
    """Angles for U (stock register) and V (time register)."""
    theta_u: np.ndarray
    theta_v: np.ndarray

    @classmethod
    def from_flat(cls, ansatz: AnsatzSpec, flat) -> "ParamVector":
        flat = np.asarray(flat, dtype=float)
        count = ansatz.parameter_count
        if flat.shape != (2 * count,):
            raise ArgumentError(f"Expected {2 * count} parameters, got {flat.shape}")
        return cls(flat[:count].copy(), flat[count:].copy())

    @classmethod
    def zeros(cls, ansatz: AnsatzSpec) -> "ParamVector":
        return cls(np.zeros(ansatz.parameter_count), np.zeros(ansatz.parameter_count))

    @classmethod
    def random(cls, ansatz: AnsatzSpec, rng: np.random.Generator) -> "ParamVector":
        """Uniform angles in [-pi, pi)."""
        return cls.from_flat(ansatz, rng.uniform(-np.pi, np.pi, size=2 * ansatz.parameter_count))

    def flat(self) -> np.ndarray:
        return np.concatenate([self.theta_u, self.theta_v])

    def to_dict(self) -> Dict:
        return {
            'theta_u': [float(x) for x in self.theta_u],
            'theta_v': [float(x) for x in self.theta_v],
        }


def build_ansatz(ansatz: AnsatzSpec, params) -> GateCircuit:
    """Circuit on one register of ``ansatz.n_qubits_per_register`` qubits."""
    params = np.asarray(params, dtype=float).ravel()
    if params.shape[0] != ansatz.parameter_count:
        raise ArgumentError(
            f"Ansatz expects {ansatz.parameter_count} parameters, got {params.shape[0]}"
        )
    n = ansatz.n_qubits_per_register
    instructions = []
    angles = iter(params)
    for _ in range(ansatz.layers):
        for q in range(n):
            instructions.append(GateInstruction(GateKind.RZ, q, angle=next(angles)))
            instructions.append(GateInstruction(GateKind.RY, q, angle=next(angles)))
        for q in range(n - 1):
            instructions.append(GateInstruction(GateKind.CNOT, q + 1, control=q))
    return GateCircuit(n, tuple(instructions))


def register_pair_circuit(ansatz: AnsatzSpec, params: ParamVector) -> GateCircuit:
    """U on the stock register followed by V on the time register, as one circuit."""
    n = ansatz.n_qubits_per_register
    u = build_ansatz(ansatz, params.theta_u).embed(2 * n, 0)
    v = build_ansatz(ansatz, params.theta_v).embed(2 * n, n)
    return u.compose(v)
