"""
Tests for gate instructions, circuits and circuit application.
"""

import math

import numpy as np
import pytest

from qentropy.core.sim import (
    GateCircuit,
    GateInstruction,
    GateKind,
    StateVector,
    apply_circuit,
    circuit_from_dict,
    circuit_from_gates,
    circuit_to_dict,
    circuit_unitary,
    fidelity,
    gate_matrix,
    hadamard_probabilities,
)
from qentropy.utils.errors import ArgumentError, CircuitError


class TestGateMatrices:

    @pytest.mark.parametrize("kind", [GateKind.RX, GateKind.RY, GateKind.RZ])
    def test_rotations_unitary(self, kind):
        m = gate_matrix(kind, 0.37)
        np.testing.assert_allclose(m @ m.conj().T, np.eye(2), atol=1e-15)

    def test_ry_real(self):
        m = gate_matrix(GateKind.RY, math.pi / 2)
        assert np.all(m.imag == 0)
        np.testing.assert_allclose(m[:, 0].real, [1 / math.sqrt(2)] * 2)


class TestGateInstruction:

    def test_cnot_requires_control(self):
        with pytest.raises(CircuitError):
            GateInstruction(GateKind.CNOT, 1)

    def test_control_equals_target(self):
        with pytest.raises(CircuitError):
            GateInstruction(GateKind.CNOT, 1, control=1)

    def test_rotation_requires_angle(self):
        with pytest.raises(CircuitError):
            GateInstruction(GateKind.RY, 0)

    def test_hadamard_takes_no_angle(self):
        with pytest.raises(CircuitError):
            GateInstruction(GateKind.H, 0, angle=0.1)

    def test_shifted(self):
        ins = GateInstruction(GateKind.CNOT, 1, control=0).shifted(2)
        assert ins.qubits == (2, 3)


class TestApplyCircuit:

    def test_ry_half_pi_makes_plus(self, plus_state):
        circuit = circuit_from_gates(1, [("RY", 0, math.pi / 2)])
        out = apply_circuit(StateVector.zero(1), circuit)
        assert fidelity(out, plus_state) == pytest.approx(1.0)

    def test_cnot_flips_target_when_control_set(self):
        circuit = circuit_from_gates(2, [("CNOT", 0, 1)])
        out = apply_circuit(StateVector.basis(2, 0b10), circuit)
        assert out.probabilities[0b11] == pytest.approx(1.0)

    def test_cnot_reverse_direction(self):
        circuit = circuit_from_gates(2, [("CNOT", 1, 0)])
        out = apply_circuit(StateVector.basis(2, 0b01), circuit)
        assert out.probabilities[0b11] == pytest.approx(1.0)

    def test_bell_preparation(self, bell_state):
        circuit = circuit_from_gates(2, [("H", 0), ("CNOT", 0, 1)])
        out = apply_circuit(StateVector.zero(2), circuit)
        assert fidelity(out, bell_state) == pytest.approx(1.0)

    def test_qubit_zero_is_most_significant(self):
        circuit = circuit_from_gates(3, [("RY", 0, math.pi)])
        out = apply_circuit(StateVector.zero(3), circuit)
        assert out.probabilities[0b100] == pytest.approx(1.0)

    def test_input_untouched(self):
        state = StateVector.zero(2)
        apply_circuit(state, circuit_from_gates(2, [("H", 1)]))
        assert state.amplitudes[0] == 1.0

    def test_qubit_count_mismatch(self):
        with pytest.raises(CircuitError):
            apply_circuit(StateVector.zero(2), circuit_from_gates(3, [("H", 0)]))

    def test_out_of_range_reports_position(self):
        circuit = GateCircuit(2, (
            GateInstruction(GateKind.H, 0),
            GateInstruction(GateKind.RY, 5, angle=0.1),
        ))
        with pytest.raises(CircuitError) as info:
            apply_circuit(StateVector.zero(2), circuit)
        assert info.value.position == 1

    def test_empty_circuit_is_identity(self, bell_state):
        out = apply_circuit(bell_state, GateCircuit(2))
        assert fidelity(out, bell_state) == pytest.approx(1.0)


class TestCircuitStructure:

    def test_counts(self):
        circuit = circuit_from_gates(2, [("RY", 0, 0.1), ("CNOT", 0, 1), ("RZ", 1, 0.2)])
        assert circuit.gate_count == 3
        assert circuit.cnot_count == 1

    def test_embed_and_compose(self):
        u = circuit_from_gates(1, [("RY", 0, math.pi)])
        wide = u.embed(2, 0).compose(u.embed(2, 1))
        out = apply_circuit(StateVector.zero(2), wide)
        assert out.probabilities[0b11] == pytest.approx(1.0)

    def test_embed_out_of_bounds(self):
        with pytest.raises(CircuitError):
            circuit_from_gates(2, [("H", 0)]).embed(3, 2)

    def test_compose_mismatch(self):
        with pytest.raises(CircuitError):
            GateCircuit(1).compose(GateCircuit(2))

    def test_unitary_columns_are_basis_images(self):
        circuit = circuit_from_gates(2, [("H", 0), ("CNOT", 0, 1), ("RZ", 1, 0.3)])
        u = circuit_unitary(circuit)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
        image = apply_circuit(StateVector.basis(2, 2), circuit)
        np.testing.assert_allclose(u[:, 2], image.amplitudes, atol=1e-14)

    def test_dict_round_trip(self):
        circuit = circuit_from_gates(3, [("RY", 0, 0.25), ("CNOT", 2, 0), ("RZ", 1, -1.5)])
        record = circuit_to_dict(circuit, method="gasp")
        assert record['method'] == "gasp"
        assert record['instructions'][1] == {'kind': 'CNOT', 'target': 0, 'control': 2}
        assert circuit_from_dict(record) == circuit


class TestHadamardProbabilities:

    def test_minus_state_maps_to_one(self, minus_state):
        np.testing.assert_allclose(hadamard_probabilities(minus_state), [0.0, 1.0], atol=1e-15)

    def test_matches_explicit_layer(self, rng):
        state = StateVector.from_amplitudes(rng.normal(size=8), normalize=True)
        explicit = apply_circuit(state, circuit_from_gates(3, [("H", 0), ("H", 1), ("H", 2)]))
        np.testing.assert_allclose(hadamard_probabilities(state), explicit.probabilities, atol=1e-12)


def random_circuit(n_qubits, depth, rng):
    kinds = list(GateKind)
    instructions = []
    for _ in range(depth):
        kind = kinds[int(rng.integers(len(kinds)))]
        target = int(rng.integers(n_qubits))
        if kind.is_controlled:
            control = int(rng.integers(n_qubits - 1))
            if control >= target:
                control += 1
            instructions.append(GateInstruction(kind, target, control=control))
        elif kind.is_rotation:
            angle = float(rng.uniform(-2 * math.pi, 2 * math.pi))
            instructions.append(GateInstruction(kind, target, angle=angle))
        else:
            instructions.append(GateInstruction(kind, target))
    return GateCircuit(n_qubits, tuple(instructions))


class TestGateAlgebra:

    def test_norm_preserved_over_random_circuits(self, rng):
        for _ in range(1000):
            n = int(rng.integers(2, 5))
            raw = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
            state = StateVector.from_amplitudes(raw, normalize=True)
            out = apply_circuit(state, random_circuit(n, int(rng.integers(1, 30)), rng))
            assert np.sum(out.probabilities) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("gates", [
        [("H", 1)],
        [("CNOT", 0, 2)],
        [("CNOT", 2, 0)],
        [("CZ", 1, 2)],
    ])
    def test_self_inverse(self, gates):
        circuit = circuit_from_gates(3, gates)
        np.testing.assert_allclose(circuit_unitary(circuit.compose(circuit)), np.eye(8), atol=1e-14)

    @pytest.mark.parametrize("kind", ["RX", "RY", "RZ"])
    def test_rotation_angles_add(self, kind, rng):
        for _ in range(20):
            a, b = (float(x) for x in rng.uniform(-2 * math.pi, 2 * math.pi, size=2))
            split = circuit_from_gates(2, [(kind, 1, a), (kind, 1, b)])
            joined = circuit_from_gates(2, [(kind, 1, a + b)])
            np.testing.assert_allclose(circuit_unitary(split), circuit_unitary(joined), atol=1e-12)

    def test_non_unitary_gate_is_not_hidden(self, mocker):
        mocker.patch("qentropy.core.sim.circuit.gate_matrix", return_value=np.eye(2) * 1.5)
        with pytest.raises(ArgumentError, match="norm"):
            apply_circuit(StateVector.zero(1), circuit_from_gates(1, [("H", 0)]))
