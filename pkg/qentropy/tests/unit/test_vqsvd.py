"""
Tests for the VQSVD ansatz, Hamming cost and solver.
"""

import math

import numpy as np
import pytest

from qentropy.config.schemas.optimizer_schema import SpsaConfig
from qentropy.core.market import svd_entropy_oracle
from qentropy.core.sim import (
    StateVector,
    circuit_unitary,
    partial_trace_second,
    schmidt_values,
    von_neumann_entropy,
)
from qentropy.core.vqsvd import (
    AnsatzSpec,
    CostMode,
    ParamVector,
    build_ansatz,
    reconstruct_correlation,
    register_pair_circuit,
    run_vqsvd,
    svd_cost,
)
from qentropy.utils.errors import (
    ArgumentError,
    CircuitError,
    DegenerateExtractionError,
)

NO_ITERATIONS = SpsaConfig(iterations=0)


def schmidt_diagonal(weights):
    """sum_j sqrt(w_j) |j>|j> over two equal registers."""
    dim = len(weights)
    amplitudes = np.zeros(dim * dim)
    for j, w in enumerate(weights):
        amplitudes[j * dim + j] = math.sqrt(w)
    return StateVector.from_amplitudes(amplitudes)


def rotated(state, ansatz, params):
    """(U x V)^dagger |state>, so that ``params`` undo the rotation exactly."""
    u = circuit_unitary(register_pair_circuit(ansatz, params))
    return StateVector.from_amplitudes(u.conj().T @ state.amplitudes)


def oracle_entropy(state, n_s):
    return von_neumann_entropy(partial_trace_second(state, n_s))


class TestAnsatz:

    def test_default_layers(self):
        assert AnsatzSpec(2).layers == 3

    def test_parameter_count(self):
        assert AnsatzSpec(2, layers=3).parameter_count == 12

    def test_structure(self):
        ansatz = AnsatzSpec(3, layers=2)
        circuit = build_ansatz(ansatz, np.zeros(ansatz.parameter_count))
        assert circuit.n_qubits == 3
        assert circuit.cnot_count == 4
        assert circuit.gate_count == 2 * (6 + 2)

    def test_wrong_parameter_count(self):
        with pytest.raises(ArgumentError):
            build_ansatz(AnsatzSpec(2), np.zeros(3))

    def test_zero_params_are_identity(self):
        ansatz = AnsatzSpec(2, layers=2)
        u = circuit_unitary(register_pair_circuit(ansatz, ParamVector.zeros(ansatz)))
        np.testing.assert_allclose(u, np.eye(16), atol=1e-15)

    def test_flat_round_trip(self, rng):
        ansatz = AnsatzSpec(2)
        params = ParamVector.random(ansatz, rng)
        again = ParamVector.from_flat(ansatz, params.flat())
        np.testing.assert_array_equal(again.theta_u, params.theta_u)
        np.testing.assert_array_equal(again.theta_v, params.theta_v)
        assert np.all(np.abs(params.flat()) <= math.pi)

    @pytest.mark.parametrize("kwargs", [{'n_qubits_per_register': 0}, {'n_qubits_per_register': 1, 'layers': 0}])
    def test_invalid_spec(self, kwargs):
        with pytest.raises(ArgumentError):
            AnsatzSpec(**kwargs)


class TestSvdCost:

    def test_bell_state_is_zero(self, bell_state):
        ansatz = AnsatzSpec(1)
        assert svd_cost(bell_state, ParamVector.zeros(ansatz), ansatz) == pytest.approx(0.0, abs=1e-15)

    def test_mismatched_pair_is_one(self):
        ansatz = AnsatzSpec(1)
        assert svd_cost(StateVector.basis(2, 0b01), ParamVector.zeros(ansatz), ansatz) == pytest.approx(1.0)

    def test_bounded_by_register_width(self, rng):
        ansatz = AnsatzSpec(2, layers=2)
        for _ in range(20):
            state = StateVector.from_amplitudes(rng.normal(size=16), normalize=True)
            cost = svd_cost(state, ParamVector.random(ansatz, rng), ansatz)
            assert -1e-12 <= cost <= 2.0 + 1e-12

    def test_register_mismatch(self):
        ansatz = AnsatzSpec(2)
        with pytest.raises(CircuitError):
            svd_cost(StateVector.zero(3), ParamVector.zeros(ansatz), ansatz)

    def test_shots_agree_with_exact(self, rng):
        ansatz = AnsatzSpec(2)
        for i in range(50):
            state = StateVector.from_amplitudes(rng.normal(size=16), normalize=True)
            params = ParamVector.random(ansatz, rng)
            exact = svd_cost(state, params, ansatz)
            sampled = svd_cost(state, params, ansatz, CostMode(shots=100_000, seed=i))
            assert abs(sampled - exact) < 0.02

    def test_invalid_shots(self):
        with pytest.raises(ArgumentError):
            CostMode(shots=0)


class TestRunVqsvd:

    def test_schmidt_diagonal_state_needs_no_optimization(self):
        ansatz = AnsatzSpec(1)
        state = schmidt_diagonal([0.7, 0.3])
        result = run_vqsvd(state, ansatz, NO_ITERATIONS, initial_params=ParamVector.zeros(ansatz))
        assert result.entropy == pytest.approx(oracle_entropy(state, 1), abs=1e-9)
        assert result.frobenius_error < 1e-9
        np.testing.assert_allclose(result.schmidt_weights, [0.7, 0.3], atol=1e-12)
        assert result.loss_trace == []

    def test_rotated_state_recovered_with_known_params(self, rng):
        ansatz = AnsatzSpec(2, layers=2)
        params = ParamVector.random(ansatz, rng)
        state = rotated(schmidt_diagonal([0.5, 0.3, 0.15, 0.05]), ansatz, params)
        result = run_vqsvd(state, ansatz, NO_ITERATIONS, initial_params=params)
        assert result.final_loss == pytest.approx(0.0, abs=1e-12)
        assert result.entropy == pytest.approx(oracle_entropy(state, 2), abs=1e-9)
        assert result.frobenius_error < 1e-9
        assert result.leaked_mass == pytest.approx(0.0, abs=1e-12)

    def test_window_run_keeps_best_iterate(self, window_targets, window_correlations):
        ansatz = AnsatzSpec(2)
        result = run_vqsvd(
            window_targets[0], ansatz, SpsaConfig(iterations=60, seed=5),
            ideal_correlation=window_correlations[0],
        )
        assert result.final_loss <= result.initial_loss + 1e-12
        assert len(result.loss_trace) == 60
        assert 0.0 <= result.entropy <= math.log(4) + 1e-12
        assert np.sum(result.schmidt_weights) == pytest.approx(1.0)
        assert np.all(np.diff(result.schmidt_weights) <= 0)
        assert result.frobenius_error_ideal == pytest.approx(result.frobenius_error, abs=1e-12)

    def test_seeded_runs_identical(self, window_targets):
        ansatz = AnsatzSpec(2)
        config = SpsaConfig(iterations=20, seed=9)
        first = run_vqsvd(window_targets[1], ansatz, config, CostMode(shots=500, seed=2))
        second = run_vqsvd(window_targets[1], ansatz, config, CostMode(shots=500, seed=2))
        assert first.to_dict() == second.to_dict()
        assert first.to_dict()['wall_time'] == 0.0

    def test_marginal_extraction_has_no_leak(self, window_targets):
        ansatz = AnsatzSpec(2)
        result = run_vqsvd(window_targets[0], ansatz, NO_ITERATIONS, extraction="marginal")
        assert result.leaked_mass == pytest.approx(0.0, abs=1e-12)

    def test_unknown_extraction(self, window_targets):
        with pytest.raises(ArgumentError):
            run_vqsvd(window_targets[0], AnsatzSpec(2), NO_ITERATIONS, extraction="diagonal")

    def test_restarts_default(self, window_targets):
        result = run_vqsvd(window_targets[0], AnsatzSpec(2), SpsaConfig(iterations=5, seed=1))
        assert result.restarts == 4
        assert result.to_dict()['config']['restarts'] == 4

    def test_initial_params_pin_a_single_run(self, window_targets, rng):
        ansatz = AnsatzSpec(2)
        result = run_vqsvd(window_targets[0], ansatz, SpsaConfig(iterations=5),
                           initial_params=ParamVector.random(ansatz, rng), restarts=3)
        assert result.restarts == 1

    def test_more_restarts_never_worse(self, window_targets):
        ansatz = AnsatzSpec(2)
        config = SpsaConfig(iterations=30, seed=8)
        single = run_vqsvd(window_targets[4], ansatz, config, restarts=1)
        several = run_vqsvd(window_targets[4], ansatz, config, restarts=3)
        assert several.final_loss <= single.final_loss + 1e-12

    def test_restarts_must_be_positive(self, window_targets):
        with pytest.raises(ArgumentError):
            run_vqsvd(window_targets[0], AnsatzSpec(2), NO_ITERATIONS, restarts=0)

    def test_no_matched_mass(self):
        ansatz = AnsatzSpec(1)
        with pytest.raises(DegenerateExtractionError):
            run_vqsvd(StateVector.basis(2, 0b01), ansatz, NO_ITERATIONS,
                      initial_params=ParamVector.zeros(ansatz))


class TestExtractionConsistency:

    def test_clean_extraction_matches_schmidt_values(self, rng):
        ansatz = AnsatzSpec(2, layers=2)
        for _ in range(10):
            weights = np.sort(rng.dirichlet(np.ones(4)))[::-1]
            params = ParamVector.random(ansatz, rng)
            state = rotated(schmidt_diagonal(weights), ansatz, params)
            result = run_vqsvd(state, ansatz, NO_ITERATIONS, initial_params=params)
            assert result.leaked_mass < 1e-9
            np.testing.assert_allclose(result.schmidt_weights, schmidt_values(state, 2), atol=1e-6)

    def test_frobenius_distance_invariant_under_relabelling(self, rng):
        ansatz = AnsatzSpec(2)
        u = circuit_unitary(build_ansatz(ansatz, ParamVector.random(ansatz, rng).theta_u))
        weights = rng.dirichlet(np.ones(4))
        target = partial_trace_second(StateVector.from_amplitudes(rng.normal(size=16), normalize=True), 2).entries
        baseline = np.linalg.norm(reconstruct_correlation(u, weights) - target)
        for _ in range(5):
            order = rng.permutation(4)
            permuted = reconstruct_correlation(u[order, :], weights[order])
            assert np.linalg.norm(permuted - target) == pytest.approx(baseline, abs=1e-12)


@pytest.mark.slow
class TestOracleCalibration:

    @pytest.mark.parametrize("window_index", range(8))
    def test_exact_preparation_matches_oracle(self, window_index, window_targets, window_correlations):
        oracle = svd_entropy_oracle(window_correlations[window_index]).entropy
        hits = 0
        for seed in range(10):
            result = run_vqsvd(
                window_targets[window_index], AnsatzSpec(2), SpsaConfig(iterations=2000, seed=seed),
            )
            hits += abs(result.entropy - oracle) <= 0.05
        assert hits >= 8
