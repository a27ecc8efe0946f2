"""
Tests for Clifford action extraction and the covariance class.

Covers:
- Exact conjugation tables of the generator set against dense matrices
- Symplectic parts, composition and inverses, the composition law on short words
- Re-gauged phases Phi(a) + nu(a) - nu(S a)
- Rejection of non-Clifford and non-unitary input
- Explicit even-d obstructions with value d/2, edge by edge, and the qubit Hadamard face
- Odd-d triviality of [Phi_cov] with re-checked witnesses
"""

import numpy as np
import pytest

from src.qudit_cohomology.application.services import CliffordService
from src.qudit_cohomology.domain.algebra import gauge_shift, standard_gauge, symplectic_value
from src.qudit_cohomology.domain.exceptions import (
    ContractViolationError, NotCliffordError, ResourceLimitError
)
from src.qudit_cohomology.domain.models import PauliPoint, PauliTuple, Verdict, enumerate_points
from src.qudit_cohomology.infrastructure.configuration import AppSettings


# ═══════════════════════════════════════════════════════════════════
# Extraction
# ═══════════════════════════════════════════════════════════════════


class TestExtraction:
    """U T_a U^dagger = omega^Phi(a) T_{S a} read exactly off U."""

    @pytest.mark.parametrize("d,n", [(2, 1), (3, 1), (4, 1), (5, 1), (3, 2), (2, 2)])
    def test_generators_match_dense_conjugation(self, clifford, d, n):
        for gate in clifford.generator_list(d, n):
            assert clifford.dense_residual(gate) < 1e-8, gate.name

    def test_generator_names(self, clifford):
        names = set(clifford.generator_set(3, 2))
        assert names == {"I", "F[0]", "F[1]", "P[0]", "P[1]", "X[0]", "X[1]", "Z[0]", "Z[1]", "SUM[0,1]"}

    @pytest.mark.parametrize("d", [3, 4])
    def test_symplectic_part_preserves_the_form(self, clifford, d):
        points = list(enumerate_points(d, 1))
        for gate in clifford.generator_list(d, 1):
            for a in points:
                for b in points:
                    assert symplectic_value(gate.map_point(a), gate.map_point(b)) == symplectic_value(a, b)

    def test_fourier_rotates_labels(self, clifford):
        gate = clifford.generator_set(3, 1)["F[0]"]
        x = PauliPoint(3, (0,), (1,))
        z = PauliPoint(3, (1,), (0,))
        assert gate.map_point(x) == z
        assert gate.map_point(z) == -x

    def test_symplectic_matrix_acts_like_map_point(self, clifford):
        gate = clifford.generator_set(3, 2)["SUM[0,1]"]
        for a in enumerate_points(3, 2):
            image = [int(v) for v in gate.symplectic.apply(list(a.vector))]
            assert tuple(image) == gate.map_point(a).vector

    def test_rejects_non_clifford(self, clifford):
        g = standard_gauge(3, 1)
        t_gate = np.diag([1, 1, np.exp(2j * np.pi / 9)])
        with pytest.raises(NotCliffordError):
            clifford.extract_action(g, t_gate, "T")

    def test_rejects_non_unitary(self, clifford):
        with pytest.raises(ContractViolationError):
            clifford.extract_action(standard_gauge(3, 1), 2 * np.eye(3), "twice")

    def test_rejects_wrong_shape(self, clifford):
        with pytest.raises(ContractViolationError):
            clifford.extract_action(standard_gauge(3, 2), np.eye(3), "small")

    def test_dense_limit(self, solver):
        service = CliffordService(solver, AppSettings(max_dense_dimension=8))
        with pytest.raises(ResourceLimitError):
            service.generator_set(3, 2)


class TestComposition:
    """Products and inverses are composed exactly."""

    def test_gate_times_inverse_is_identity(self, clifford):
        for gate in clifford.generator_list(3, 2):
            identity = clifford.compose(gate, clifford.inverse(gate))
            for a in enumerate_points(3, 2):
                assert identity.conjugate(a) == (0, a)

    def test_compose_matches_dense_product(self, clifford):
        gates = clifford.generator_set(5, 1)
        product = clifford.compose(gates["F[0]"], gates["P[0]"])
        assert clifford.dense_residual(product) < 1e-8

    def test_fourier_has_order_four(self, clifford):
        gate = clifford.generator_set(3, 1)["F[0]"]
        power = gate
        for _ in range(3):
            power = clifford.compose(power, gate)
        for a in enumerate_points(3, 1):
            assert power.map_point(a) == a

    def test_regauge_keeps_the_symplectic_part(self, clifford):
        gate = clifford.generator_set(3, 1)["P[0]"]
        other = gauge_shift(standard_gauge(3, 1), {PauliPoint(3, (0,), (1,)): 1}, "other")
        moved = clifford.regauge(gate, other)
        assert moved.symplectic == gate.symplectic
        assert moved.gauge == other
        assert clifford.dense_residual(moved) < 1e-8

    def test_embedded_gate_matches_generator(self, clifford):
        single = clifford.generator_set(3, 1)["F[0]"]
        embedded = clifford.embed_gate(single, 1, 2)
        assert embedded.symplectic == clifford.generator_set(3, 2)["F[1]"].symplectic
        assert clifford.dense_residual(embedded) < 1e-8

    def test_compose_rejects_mixed_gauges(self, clifford):
        gate = clifford.generator_set(3, 1)["P[0]"]
        other = gauge_shift(standard_gauge(3, 1), {PauliPoint(3, (0,), (1,)): 1}, "other")
        with pytest.raises(ContractViolationError):
            clifford.compose(gate, clifford.regauge(gate, other))

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_composition_law_on_words(self, clifford, d):
        generators = clifford.generator_list(d, 1)
        points = list(enumerate_points(d, 1))
        words = [(gate,) for gate in generators]
        words += [word + (gate,) for word in words for gate in generators]
        words += [word + (gate,) for word in words if len(word) == 2 for gate in generators]
        for word in words:
            product = word[0]
            for gate in word[1:]:
                first, product = product, clifford.compose(product, gate)
                for a in points:
                    image = gate.map_point(a)
                    assert product.map_point(a) == first.map_point(image)
                    assert product.phase(a) == (gate.phase(a) + first.phase(image)) % d, (product.name, a)
            for a in points:
                vector = tuple(int(v) for v in product.symplectic.apply(list(a.vector)))
                assert vector == product.map_point(a).vector
            assert clifford.dense_residual(product) < 1e-8, product.name

    @pytest.mark.slow
    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_random_regauging(self, clifford, random_shift, d):
        base = standard_gauge(d, 1)
        points = list(enumerate_points(d, 1))
        for _ in range(100):
            nu = random_shift(d, 1)
            shifted = gauge_shift(base, nu)
            for gate in clifford.generator_list(d, 1):
                moved = clifford.regauge(gate, shifted)
                expected = clifford.shift_phase_cochain(gate, nu)
                for a in points:
                    assert moved.phase(a) == expected.at(a), (gate.name, a)
                    assert moved.map_point(a) == gate.map_point(a)


class TestLinearPhases:
    """Pauli gates have linear phase cochains."""

    @pytest.mark.parametrize("name", ["X[0]", "Z[0]", "I"])
    def test_pauli_gates(self, clifford, name):
        gate = clifford.generator_set(3, 1)[name]
        vector = clifford.linear_phase_vector(gate)
        assert vector is not None
        for a in enumerate_points(3, 1):
            assert gate.phase(a) == symplectic_value(vector, a)


# ═══════════════════════════════════════════════════════════════════
# Covariance class
# ═══════════════════════════════════════════════════════════════════


class TestEvenObstructions:
    """An invariant face with Phi_cov = d/2 exists for every even d."""

    @pytest.mark.parametrize("d", [2, 4, 6, 8])
    def test_lemma_obstruction(self, clifford, d):
        obstruction = clifford.lemma_obstruction(standard_gauge(d, 1))
        assert obstruction.value == d // 2
        assert clifford.is_invariant_face(obstruction.gate, obstruction.face)
        assert obstruction.gate.name == ("FOURIER" if d % 4 == 2 else "QUAD")

    def test_lemma_obstruction_on_two_qudits(self, clifford):
        obstruction = clifford.lemma_obstruction(standard_gauge(2, 2))
        assert obstruction.value == 1
        assert obstruction.u.n == 2

    def test_search_finds_an_obstruction(self, clifford):
        g = standard_gauge(2, 1)
        gate = clifford.fourier_gate(2, 1, g)
        found = clifford.find_obstruction(g, [gate])
        assert found is not None
        assert clifford.is_invariant_face(gate, found.face)
        assert int(clifford.phi_cov_eval(gate, found.face)) == found.value != 0

    @pytest.mark.parametrize("d", [4, 8])
    def test_quadratic_face_edges(self, clifford, d):
        obstruction = clifford.lemma_obstruction(standard_gauge(d, 1))
        gate, u, v = obstruction.gate, obstruction.u, obstruction.v
        half = d // 2
        assert obstruction.edge_phases == (0, half, 0)
        assert gate.map_point(u) == v
        assert gate.conjugate(v) == (half, u)
        assert gate.conjugate(u + v) == (0, u + v)

    @pytest.mark.parametrize("d", [2, 6])
    def test_fourier_face_edges(self, clifford, d):
        obstruction = clifford.lemma_obstruction(standard_gauge(d, 1))
        gate, u, v = obstruction.gate, obstruction.u, obstruction.v
        assert gate.map_point(u) == v
        assert gate.map_point(v) == u
        p_u, p_v, p_uv = obstruction.edge_phases
        assert (p_u + p_v - p_uv) % d == d // 2

    def test_lemma_gates_need_matching_residues(self, clifford):
        with pytest.raises(ContractViolationError):
            clifford.fourier_gate(4)
        with pytest.raises(ContractViolationError):
            clifford.quadratic_gate(6)

    def test_decision_for_qubits_is_nontrivial(self, clifford):
        g = standard_gauge(2, 1)
        gates = clifford.generator_list(2, 1) + [clifford.fourier_gate(2, 1, g)]
        decision = clifford.decide_phi_cov_trivial(g, gates)
        assert decision.verdict is Verdict.NONTRIVIAL
        obstruction = decision.witness
        assert clifford.is_invariant_face(obstruction.gate, obstruction.face)
        assert obstruction.value % 2 != 0

    @pytest.mark.parametrize("d", [2, 4])
    def test_random_gauges_stay_obstructed(self, clifford, random_shift, d):
        for _ in range(3):
            g = gauge_shift(standard_gauge(d, 1), random_shift(d, 1))
            extra = clifford.fourier_gate(2, 1, g) if d == 2 else clifford.quadratic_gate(4, 1, g)
            decision = clifford.decide_phi_cov_trivial(g, clifford.generator_list(d, 1, g) + [extra])
            assert decision.verdict is Verdict.NONTRIVIAL
            obstruction = decision.witness
            assert clifford.is_invariant_face(obstruction.gate, obstruction.face)
            assert int(clifford.phi_cov_eval(obstruction.gate, obstruction.face)) == obstruction.value != 0


class TestHadamard:
    """The qubit Fourier gate fixes the face [X|Z] with Phi_cov = 1."""

    def setup_method(self):
        self.x = PauliPoint(2, (0,), (1,))
        self.z = PauliPoint(2, (1,), (0,))
        self.y = PauliPoint(2, (1,), (1,))

    def test_phases(self, clifford):
        gate = clifford.fourier_gate(2)
        assert gate.phase(self.x) == 0
        assert gate.phase(self.z) == 0
        assert gate.phase(self.y) == 1

    def test_face_value(self, clifford):
        gate = clifford.fourier_gate(2)
        face = PauliTuple((self.x, self.z), restricted=False)
        assert int(clifford.phi_cov_eval(gate, face)) == 1
        assert clifford.is_invariant_face(gate, face)

    def test_search_returns_the_face(self, clifford):
        g = standard_gauge(2, 1)
        found = clifford.find_obstruction(g, [clifford.fourier_gate(2, 1, g)])
        assert found.face.entries == (self.x, self.z)
        assert found.value == 1


class TestOddTriviality:
    """For odd d the covariance system is solvable."""

    def test_single_qutrit(self, clifford):
        g = standard_gauge(3, 1)
        gates = clifford.generator_list(3, 1)
        decision = clifford.decide_phi_cov_trivial(g, gates)
        assert decision.verdict is Verdict.TRIVIAL
        assert clifford.verify_trivializing(g, gates, decision.witness)

    @pytest.mark.slow
    def test_two_qutrits(self, clifford):
        g = standard_gauge(3, 2)
        gates = clifford.generator_list(3, 2)
        decision = clifford.decide_phi_cov_trivial(g, gates)
        assert decision.verdict is Verdict.TRIVIAL
        assert clifford.verify_trivializing(g, gates, decision.witness)

    def test_shifted_gauge(self, clifford):
        g = gauge_shift(standard_gauge(5, 1), {PauliPoint(5, (1,), (1,)): 2}, "shifted")
        gates = clifford.generator_list(5, 1, g)
        decision = clifford.decide_phi_cov_trivial(g, gates)
        assert decision.is_trivial
        assert clifford.verify_trivializing(g, gates, decision.witness)

    def test_random_gauges_stay_trivial(self, clifford, random_shift):
        for _ in range(5):
            g = gauge_shift(standard_gauge(3, 1), random_shift(3, 1))
            gates = clifford.generator_list(3, 1, g)
            decision = clifford.decide_phi_cov_trivial(g, gates)
            assert decision.verdict is Verdict.TRIVIAL
            assert clifford.verify_trivializing(g, gates, decision.witness)

    def test_bad_witness_is_rejected(self, clifford):
        g = standard_gauge(3, 1)
        gates = clifford.generator_list(3, 1)
        assert not clifford.verify_trivializing(g, gates, {PauliPoint(3, (1,), (0,)): 1})

    def test_shift_phase_cochain_removes_phases(self, clifford):
        g = standard_gauge(3, 1)
        gates = clifford.generator_list(3, 1)
        nu = clifford.decide_phi_cov_trivial(g, gates).witness
        # the solved nu is the shift gamma -> gamma - nu
        flat = {point: -value for point, value in nu.items()}
        for gate in gates:
            shifted = clifford.shift_phase_cochain(gate, flat)
            for a in enumerate_points(3, 1):
                for b in enumerate_points(3, 1):
                    total = shifted.at(a) + shifted.at(b) - shifted.at(a + b)
                    assert total % 3 == 0, (gate.name, a, b)

    def test_gate_dimension_mismatch(self, clifford):
        with pytest.raises(ContractViolationError):
            clifford.decide_phi_cov_trivial(standard_gauge(3, 1), clifford.generator_list(3, 2))
