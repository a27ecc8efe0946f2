"""
Tests for Clifford elimination and the phase-space sampler.

Covers:
- Compiled and direct circuits give the same Born distribution, on hand-built and random circuits
- Conditioned gates split into branches
- Sampled statistics against the exact oracle, including stabilizer inputs on two qutrits
- Reproducibility from the seed
- Refusal of negative inputs and even d
"""

import numpy as np
import pytest

from src.qudit_cohomology.application.services import SamplingService
from src.qudit_cohomology.domain.algebra import standard_gauge
from src.qudit_cohomology.domain.exceptions import ContractViolationError, ResourceLimitError
from src.qudit_cohomology.domain.models import (
    Circuit, Condition, GateStep, MeasureStep, PauliPoint, SamplingResult, enumerate_points
)
from src.qudit_cohomology.infrastructure.configuration import AppSettings

Z = PauliPoint(3, (1,), (0,))
X = PauliPoint(3, (0,), (1,))


def ket_zero(dimension=3):
    rho = np.zeros((dimension, dimension), dtype=complex)
    rho[0, 0] = 1
    return rho


def fourier_then_two_z(clifford):
    g = standard_gauge(3, 1)
    gate = clifford.generator_set(3, 1)["F[0]"]
    return Circuit(3, 1, g, (GateStep(gate), MeasureStep(Z, 0), MeasureStep(Z, 1)))


def conditioned_circuit(clifford):
    g = standard_gauge(3, 1)
    shift = clifford.generator_set(3, 1)["X[0]"]
    return Circuit(3, 1, g, (
        MeasureStep(Z, 0),
        GateStep(shift, Condition(0, 1)),
        MeasureStep(Z, 1),
    ))


def random_circuit(clifford, rng, n, max_gates=8, max_measurements=4):
    """Qutrit circuit over the generators; at most two registers feed conditions."""
    gates = clifford.generator_list(3, n)
    labels = [p for p in enumerate_points(3, n) if not p.is_zero()]
    kinds = ["gate"] * int(rng.integers(0, max_gates + 1))
    kinds += ["measure"] * int(rng.integers(1, max_measurements + 1))
    rng.shuffle(kinds)
    steps, written, conditioned = [], [], set()
    for kind in kinds:
        if kind == "measure":
            steps.append(MeasureStep(labels[int(rng.integers(len(labels)))], len(written)))
            written.append(len(written))
            continue
        condition = None
        choices = [r for r in written if r in conditioned or len(conditioned) < 2]
        if choices and rng.random() < 0.4:
            register = int(rng.choice(choices))
            conditioned.add(register)
            condition = Condition(register, int(rng.integers(0, 3)))
        steps.append(GateStep(gates[int(rng.integers(len(gates)))], condition))
    return Circuit(3, n, standard_gauge(3, n), tuple(steps))


def stabilizer_state(clifford, rng, n, depth=6):
    """U|0...0> for U a random product of generator unitaries."""
    gates = clifford.generator_list(3, n)
    psi = np.zeros(3 ** n, dtype=complex)
    psi[0] = 1
    for _ in range(depth):
        psi = gates[int(rng.integers(len(gates)))].unitary @ psi
    return np.outer(psi, psi.conj())


# ═══════════════════════════════════════════════════════════════════
# Compilation
# ═══════════════════════════════════════════════════════════════════


class TestCompilation:
    """Measurements pulled back through the preceding gates."""

    def test_unconditioned_circuit_has_one_branch(self, sampling, clifford):
        compiled = sampling.compile_measurement_only(fourier_then_two_z(clifford))
        assert len(compiled.branches) == 1
        assert compiled.branches[0].assumptions == ()
        branch = compiled.branches[0].circuit
        assert branch.is_measurement_only
        assert len(branch.measurements) == 2

    def test_fourier_pulls_z_back_to_x(self, sampling, clifford):
        branch = sampling.compile_measurement_only(fourier_then_two_z(clifford)).branches[0].circuit
        for step in branch.steps:
            assert step.a in (X, -X)

    def test_condition_splits_into_branches(self, sampling, clifford):
        compiled = sampling.compile_measurement_only(conditioned_circuit(clifford))
        assert len(compiled.branches) == 3
        assert sorted(b.assumed[0] for b in compiled.branches) == [0, 1, 2]
        for branch in compiled.branches:
            assert branch.circuit.is_measurement_only

    @pytest.mark.parametrize("state", ["zero", "mixed", "random"])
    def test_compiled_matches_direct(self, sampling, wigner, clifford, rng, state):
        rho = {"zero": ket_zero(), "mixed": np.eye(3) / 3,
               "random": wigner.random_density_matrix(3, rng)}[state]
        for circuit in (fourier_then_two_z(clifford), conditioned_circuit(clifford)):
            direct = sampling.exact_distribution(circuit, rho)
            compiled = sampling.exact_distribution(sampling.compile_measurement_only(circuit), rho)
            assert set(direct) == set(compiled)
            for key in direct:
                assert abs(direct[key] - compiled[key]) < 1e-10

    @pytest.mark.slow
    def test_two_qutrit_circuit(self, sampling, clifford, wigner, rng):
        g = standard_gauge(3, 2)
        gates = clifford.generator_set(3, 2)
        z0 = PauliPoint(3, (1, 0), (0, 0))
        z1 = PauliPoint(3, (0, 1), (0, 0))
        circuit = Circuit(3, 2, g, (
            GateStep(gates["F[0]"]), GateStep(gates["SUM[0,1]"]),
            MeasureStep(z0, 0), GateStep(gates["P[1]"], Condition(0, 2)), MeasureStep(z1, 1),
        ))
        rho = wigner.random_density_matrix(9, rng)
        direct = sampling.exact_distribution(circuit, rho)
        compiled = sampling.exact_distribution(sampling.compile_measurement_only(circuit), rho)
        assert sampling.total_variation(direct, compiled) < 1e-10

    @pytest.mark.slow
    def test_random_circuits(self, sampling, clifford, wigner, rng):
        for trial in range(200):
            n = 1 + trial % 2
            circuit = random_circuit(clifford, rng, n)
            rho = wigner.random_density_matrix(3 ** n, rng)
            compiled = sampling.compile_measurement_only(circuit)
            for branch in compiled.branches:
                assert branch.circuit.is_measurement_only
            direct = sampling.exact_distribution(circuit, rho)
            assert sampling.total_variation(direct, sampling.exact_distribution(compiled, rho)) < 1e-10


# ═══════════════════════════════════════════════════════════════════
# Exact oracle
# ═══════════════════════════════════════════════════════════════════


class TestExactDistribution:
    """Born rule with Lueders updates."""

    def test_fourier_then_repeated_z(self, sampling, clifford):
        distribution = sampling.exact_distribution(fourier_then_two_z(clifford), ket_zero())
        assert set(distribution) == {"0,0", "1,1", "2,2"}
        for probability in distribution.values():
            assert abs(probability - 1 / 3) < 1e-10

    def test_condition_not_taken(self, sampling, clifford):
        distribution = sampling.exact_distribution(conditioned_circuit(clifford), ket_zero())
        assert distribution.keys() == {"0,0"}
        assert abs(distribution["0,0"] - 1) < 1e-10

    def test_trace_must_be_one(self, sampling, clifford):
        with pytest.raises(ContractViolationError):
            sampling.exact_distribution(fourier_then_two_z(clifford), 2 * ket_zero())

    def test_shape_must_match(self, sampling, clifford):
        with pytest.raises(ContractViolationError):
            sampling.exact_distribution(fourier_then_two_z(clifford), ket_zero(9))

    def test_measurement_limit(self, clifford):
        service = SamplingService(clifford, AppSettings(oracle_max_measurements=1))
        with pytest.raises(ResourceLimitError):
            service.exact_distribution(fourier_then_two_z(clifford), ket_zero())


# ═══════════════════════════════════════════════════════════════════
# Sampling
# ═══════════════════════════════════════════════════════════════════


@pytest.fixture
def gross_representation(wigner):
    representation = wigner.construct_positive_rep(standard_gauge(3, 1))
    assert representation.found
    return representation


class TestSimulateSampling:
    """v ~ W_in, outcome r_a + [a, v], then v -> v + k a."""

    def test_matches_exact_distribution(self, sampling, wigner, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        circuit = fourier_then_two_z(clifford)
        compiled = sampling.compile_measurement_only(circuit)
        w_in = wigner.wigner_of(basis, ket_zero())
        result = sampling.simulate_sampling(basis, witness, compiled, w_in, shots=20000, seed=7)
        exact = sampling.exact_distribution(circuit, ket_zero())
        assert result.shots == 20000
        assert sum(result.counts.values()) == 20000
        assert sampling.total_variation(result.distribution, exact) <= 0.02

    def test_repeated_measurements_agree(self, sampling, wigner, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        compiled = sampling.compile_measurement_only(fourier_then_two_z(clifford))
        w_in = wigner.wigner_of(basis, np.eye(3) / 3)
        result = sampling.simulate_sampling(basis, witness, compiled, w_in, shots=2000, seed=3)
        for key in result.counts:
            first, second = key.split(",")
            assert first == second

    def test_conditioned_circuit(self, sampling, wigner, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        circuit = conditioned_circuit(clifford)
        rho = np.eye(3) / 3
        result = sampling.simulate_sampling(
            basis, witness, sampling.compile_measurement_only(circuit),
            wigner.wigner_of(basis, rho), shots=20000, seed=11,
        )
        exact = sampling.exact_distribution(circuit, rho)
        assert set(result.counts) <= set(exact)
        assert sampling.total_variation(result.distribution, exact) <= 0.02

    def test_same_seed_same_counts(self, sampling, wigner, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        compiled = sampling.compile_measurement_only(fourier_then_two_z(clifford))
        w_in = wigner.wigner_of(basis, np.eye(3) / 3)
        first = sampling.simulate_sampling(basis, witness, compiled, w_in, shots=500, seed=42)
        second = sampling.simulate_sampling(basis, witness, compiled, w_in, shots=500, seed=42)
        assert first.counts == second.counts

    @pytest.mark.slow
    def test_stabilizer_circuits_on_two_qutrits(self, sampling, wigner, clifford, rng):
        representation = wigner.construct_positive_rep(standard_gauge(3, 2))
        basis, witness = representation.basis, representation.witness
        for trial in range(10):
            circuit = random_circuit(clifford, rng, 2, max_measurements=3)
            rho = stabilizer_state(clifford, rng, 2)
            compiled = sampling.compile_measurement_only(circuit)
            w_in = wigner.wigner_of(basis, rho)
            result = sampling.simulate_sampling(basis, witness, compiled, w_in, shots=100_000, seed=trial)
            exact = sampling.exact_distribution(circuit, rho)
            assert sampling.total_variation(result.distribution, exact) <= 0.02
            assert sampling.chi_squared_test(result, exact) >= 1e-3
            again = sampling.simulate_sampling(basis, witness, compiled, w_in, shots=100_000, seed=trial)
            assert again.counts == result.counts

    def test_plain_array_input(self, sampling, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        compiled = sampling.compile_measurement_only(fourier_then_two_z(clifford))
        uniform = np.full(9, 1 / 9)
        result = sampling.simulate_sampling(basis, witness, compiled, uniform, shots=100, seed=0)
        assert sum(result.counts.values()) == 100

    def test_negative_input_is_refused(self, sampling, wigner, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        psi = np.array([0, 1, -1], dtype=complex) / np.sqrt(2)
        w_in = wigner.wigner_of(basis, np.outer(psi, psi.conj()))
        compiled = sampling.compile_measurement_only(fourier_then_two_z(clifford))
        with pytest.raises(ContractViolationError):
            sampling.simulate_sampling(basis, witness, compiled, w_in, shots=10, seed=0)

    def test_uncompiled_circuit_is_refused(self, sampling, clifford, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        with pytest.raises(ContractViolationError):
            sampling.simulate_sampling(basis, witness, fourier_then_two_z(clifford),
                                       np.full(9, 1 / 9), shots=10, seed=0)

    def test_even_d_is_refused(self, sampling, wigner):
        g = standard_gauge(2, 1)
        representation = wigner.construct_positive_rep(g)
        circuit = Circuit(2, 1, g, (MeasureStep(PauliPoint(2, (1,), (0,)), 0),))
        with pytest.raises(ContractViolationError):
            sampling.simulate_sampling(representation.basis, representation.witness,
                                       circuit, np.full(4, 1 / 4), shots=10, seed=0)

    def test_shots_must_be_positive(self, sampling, gross_representation):
        basis, witness = gross_representation.basis, gross_representation.witness
        circuit = Circuit(3, 1, standard_gauge(3, 1), (MeasureStep(Z, 0),))
        with pytest.raises(ContractViolationError):
            sampling.simulate_sampling(basis, witness, circuit, np.full(9, 1 / 9), shots=0, seed=0)


class TestRunShot:
    """Single trajectories from a fixed point."""

    def test_repeated_label_repeats_outcome(self, sampling, gross_representation):
        circuit = Circuit(3, 1, standard_gauge(3, 1), (MeasureStep(X, 0), MeasureStep(X, 1), MeasureStep(X, 2)))
        start = PauliPoint(3, (2,), (1,))
        state = sampling.run_shot(gross_representation.witness, circuit, start, seed=5)
        assert len(state.outcome_log) == 3
        assert len(set(state.outcome_log)) == 1
        # [X, v] = -v_z in the Gross gauge, where r = 0
        assert state.outcome_log[0] == (-2) % 3

    def test_needs_measurement_only_circuit(self, sampling, clifford, gross_representation):
        with pytest.raises(ContractViolationError):
            sampling.run_shot(gross_representation.witness, fourier_then_two_z(clifford),
                              PauliPoint.zero(3, 1), seed=0)


# ═══════════════════════════════════════════════════════════════════
# Statistics
# ═══════════════════════════════════════════════════════════════════


class TestStatistics:
    """Total variation distance and the chi-squared goodness of fit."""

    def test_total_variation(self):
        assert SamplingService.total_variation({"0": 0.5, "1": 0.5}, {"0": 1.0}) == pytest.approx(0.5)
        assert SamplingService.total_variation({"0": 1.0}, {"0": 1.0}) == 0

    def test_perfect_fit(self):
        result = SamplingResult({"0": 50, "1": 50}, 100, 0)
        assert SamplingService.chi_squared_test(result, {"0": 0.5, "1": 0.5}) == pytest.approx(1.0)

    def test_impossible_outcome(self):
        result = SamplingResult({"0": 99, "2": 1}, 100, 0)
        assert SamplingService.chi_squared_test(result, {"0": 0.5, "1": 0.5}) == 0.0

    def test_poor_fit(self):
        result = SamplingResult({"0": 900, "1": 100}, 1000, 0)
        assert SamplingService.chi_squared_test(result, {"0": 0.5, "1": 0.5}) < 1e-6

    def test_distribution_property(self):
        result = SamplingResult({"1": 3, "0": 1}, 4, 0)
        assert result.distribution == {"0": 0.25, "1": 0.75}
