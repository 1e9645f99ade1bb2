"""
Dense statevector simulator: gates, circuits, fidelity, expectations,
sampling and reduced states.
"""

from .statevector import (
    DensityMatrix,
    StateVector,
    as_real_target,
    expectation_zz,
    fidelity,
    parity_signs,
    partial_trace_second,
    sample_counts,
    schmidt_values,
    von_neumann_entropy,
)
from .circuit import (
    GateCircuit,
    GateInstruction,
    GateKind,
    apply_circuit,
    circuit_from_dict,
    circuit_from_gates,
    circuit_to_dict,
    circuit_unitary,
    gate_matrix,
    hadamard_layer,
    hadamard_probabilities,
)

__all__ = [
    "DensityMatrix",
    "GateCircuit",
    "GateInstruction",
    "GateKind",
    "StateVector",
    "as_real_target",
    "apply_circuit",
    "circuit_from_dict",
    "circuit_from_gates",
    "circuit_to_dict",
    "circuit_unitary",
    "expectation_zz",
    "fidelity",
    "gate_matrix",
    "hadamard_layer",
    "hadamard_probabilities",
    "parity_signs",
    "partial_trace_second",
    "sample_counts",
    "schmidt_values",
    "von_neumann_entropy",
]
