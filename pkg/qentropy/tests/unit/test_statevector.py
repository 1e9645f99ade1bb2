"""
Tests for the dense statevector and reduced-state functions.
"""

import math

import numpy as np
import pytest

from qentropy.core.sim import (
    DensityMatrix,
    StateVector,
    as_real_target,
    expectation_zz,
    fidelity,
    partial_trace_second,
    sample_counts,
    schmidt_values,
    von_neumann_entropy,
)
from qentropy.utils.errors import ArgumentError, CircuitError


class TestStateVector:

    def test_zero_state(self):
        state = StateVector.zero(3)
        assert state.dim == 8
        assert state.amplitudes[0] == 1.0
        assert np.sum(state.probabilities) == pytest.approx(1.0)

    def test_amplitudes_are_read_only(self):
        state = StateVector.zero(1)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0

    def test_unnormalized_rejected(self):
        with pytest.raises(ArgumentError):
            StateVector(1, [1.0, 1.0])

    def test_wrong_length_rejected(self):
        with pytest.raises(ArgumentError):
            StateVector(2, [1.0, 0.0])

    def test_from_amplitudes_infers_qubits(self):
        state = StateVector.from_amplitudes([3.0, 0.0, 4.0, 0.0], normalize=True)
        assert state.n_qubits == 2
        assert state.probabilities[2] == pytest.approx(0.64)

    def test_from_amplitudes_non_power_of_two(self):
        with pytest.raises(ArgumentError):
            StateVector.from_amplitudes([1.0, 0.0, 0.0])

    def test_tensor_is_writable_copy(self):
        state = StateVector.zero(2)
        tensor = state.tensor()
        tensor[0, 0] = 0.0
        assert state.amplitudes[0] == 1.0
        assert tensor.shape == (2, 2)


class TestFidelity:

    def test_identical_states(self, plus_state):
        assert fidelity(plus_state, plus_state) == pytest.approx(1.0)

    def test_orthogonal_states(self, plus_state, minus_state):
        assert fidelity(plus_state, minus_state) == pytest.approx(0.0, abs=1e-15)

    def test_global_phase_invisible(self, plus_state):
        phased = StateVector(1, plus_state.amplitudes * np.exp(0.7j))
        assert fidelity(plus_state, phased) == pytest.approx(1.0)

    def test_symmetric(self, rng):
        a = StateVector.from_amplitudes(rng.normal(size=8), normalize=True)
        b = StateVector.from_amplitudes(rng.normal(size=8), normalize=True)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-15)

    def test_size_mismatch(self):
        with pytest.raises(CircuitError):
            fidelity(StateVector.zero(1), StateVector.zero(2))


class TestExpectationZZ:

    def test_bell_state_correlated(self, bell_state):
        assert expectation_zz(bell_state, 0, 1) == pytest.approx(1.0)

    def test_anticorrelated_basis_state(self):
        state = StateVector.basis(2, 0b01)
        assert expectation_zz(state, 0, 1) == pytest.approx(-1.0)

    def test_order_symmetric(self, rng):
        state = StateVector.from_amplitudes(rng.normal(size=16), normalize=True)
        assert expectation_zz(state, 3, 1) == expectation_zz(state, 1, 3)

    def test_same_qubit_rejected(self, bell_state):
        with pytest.raises(CircuitError):
            expectation_zz(bell_state, 1, 1)

    def test_out_of_range(self, bell_state):
        with pytest.raises(CircuitError):
            expectation_zz(bell_state, 0, 2)


class TestSampling:

    def test_counts_sum_to_shots(self, bell_state):
        counts = sample_counts(bell_state, 1000, seed=7)
        assert sum(counts.values()) == 1000
        assert set(counts) <= {0, 3}

    def test_seeded_reproducible(self, bell_state):
        assert sample_counts(bell_state, 500, seed=3) == sample_counts(bell_state, 500, seed=3)

    def test_frequencies_within_five_sigma(self, rng):
        state = StateVector.from_amplitudes(rng.normal(size=8), normalize=True)
        shots = 20_000
        counts = sample_counts(state, shots, seed=11)
        for index, p in enumerate(state.probabilities):
            sigma = math.sqrt(shots * p * (1.0 - p))
            assert abs(counts.get(index, 0) - shots * p) <= 5.0 * sigma + 1.0

    def test_non_positive_shots(self, bell_state):
        with pytest.raises(ArgumentError):
            sample_counts(bell_state, 0, seed=0)


class TestReducedStates:

    def test_bell_partial_trace_is_maximally_mixed(self, bell_state):
        rho = partial_trace_second(bell_state, 1)
        np.testing.assert_allclose(rho.entries, np.eye(2) / 2, atol=1e-15)
        assert von_neumann_entropy(rho) == pytest.approx(math.log(2))

    def test_product_state_pure(self):
        rho = partial_trace_second(StateVector.zero(2), 1)
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-15)

    def test_schmidt_values_match_reduced_eigenvalues(self, rng):
        state = StateVector.from_amplitudes(rng.normal(size=16), normalize=True)
        values = schmidt_values(state, 2)
        eigenvalues = partial_trace_second(state, 2).eigenvalues()
        np.testing.assert_allclose(values, eigenvalues, atol=1e-12)
        assert np.sum(values) == pytest.approx(1.0)
        assert np.all(np.diff(values) <= 0)

    def test_schmidt_values_padded_for_narrow_second_register(self, rng):
        state = StateVector.from_amplitudes(rng.normal(size=8), normalize=True)
        values = schmidt_values(state, 2)
        assert values.shape == (4,)
        assert values[-1] == 0.0

    @pytest.mark.parametrize("n_first", [0, 2])
    def test_partial_trace_bounds(self, bell_state, n_first):
        with pytest.raises(ArgumentError):
            partial_trace_second(bell_state, n_first)

    def test_density_matrix_shape_checked(self):
        with pytest.raises(ArgumentError):
            DensityMatrix(2, np.eye(3))


class TestRealTarget:

    def test_array_accepted(self):
        target = as_real_target(np.array([0.6, 0.8]))
        assert target.n_qubits == 1

    def test_unnormalized_array(self):
        with pytest.raises(ArgumentError):
            as_real_target(np.array([1.0, 1.0]))

    def test_complex_rejected(self):
        with pytest.raises(ArgumentError):
            as_real_target(StateVector(1, [1 / math.sqrt(2), 1j / math.sqrt(2)]))
