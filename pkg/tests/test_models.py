"""
Tests for the domain value types.

Covers:
- ModInt / ModMatrix arithmetic and contract checks
- PauliPoint indexing and group law
- Gauge invariants (gamma(0) = 0, even-d parity)
- PauliOp multiplication against dense matrices
- Chains, PauliTuple restriction and circuit validation
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from src.qudit_cohomology.domain.algebra import pauli_matrix, standard_gauge
from src.qudit_cohomology.domain.exceptions import ContractViolationError
from src.qudit_cohomology.domain.models import (
    Chain, Circuit, Condition, Gauge, GateStep, MeasureStep, ModInt, ModMatrix,
    PauliOp, PauliPoint, PauliTuple, enumerate_points
)


@st.composite
def labels(draw, d=3, n=2):
    vector = draw(st.lists(st.integers(0, d - 1), min_size=2 * n, max_size=2 * n))
    return PauliPoint.from_vector(d, vector)


# ═══════════════════════════════════════════════════════════════════
# Residues
# ═══════════════════════════════════════════════════════════════════


class TestModInt:
    """Canonical residues and ring operations."""

    def test_reduces_on_construction(self):
        assert ModInt(-1, 5).value == 4
        assert ModInt(12, 5) == 2

    @given(st.integers(), st.integers(), st.integers(2, 30))
    def test_ring_operations(self, a, b, d):
        x, y = ModInt(a, d), ModInt(b, d)
        assert (x + y).value == (a + b) % d
        assert (x - y).value == (a - b) % d
        assert (x * y).value == (a * b) % d
        assert (-x).value == (-a) % d
        assert (a - y).value == (a - b) % d

    def test_inverse_of_unit(self):
        assert (ModInt(3, 7).inverse() * 3) == 1

    def test_non_unit_has_no_inverse(self):
        with pytest.raises(ContractViolationError):
            ModInt(2, 6).inverse()

    def test_mixed_moduli_rejected(self):
        with pytest.raises(ContractViolationError):
            ModInt(1, 3) + ModInt(1, 5)

    def test_hash_matches_equality(self):
        assert len({ModInt(1, 4), ModInt(5, 4), ModInt(1, 5)}) == 2


class TestModMatrix:
    """Dense matrices over Z_d."""

    def test_entries_are_reduced_and_frozen(self):
        M = ModMatrix([[5, -1], [2, 3]], 4)
        assert M.to_lists() == [[1, 3], [2, 3]]
        with pytest.raises(ValueError):
            M.entries[0, 0] = 0

    def test_apply_and_matmul(self):
        M = ModMatrix([[1, 2], [0, 1]], 5)
        assert [int(v) for v in M.apply([1, 1])] == [3, 1]
        assert M.matmul(ModMatrix.identity(2, 5)) == M

    def test_empty_rows(self):
        M = ModMatrix.from_rows([], 3, cols=4)
        assert (M.rows, M.cols) == (0, 4)

    def test_shape_mismatch(self):
        with pytest.raises(ContractViolationError):
            ModMatrix([[1, 2]], 3).apply([1])


# ═══════════════════════════════════════════════════════════════════
# Labels and gauges
# ═══════════════════════════════════════════════════════════════════


class TestPauliPoint:
    """Labels a = (a_Z, a_X) of E = Z_d^n x Z_d^n."""

    @given(labels())
    def test_index_round_trip(self, a):
        assert PauliPoint.from_index(3, 2, a.index) == a

    def test_enumeration_is_in_index_order(self):
        points = list(enumerate_points(2, 1))
        assert [p.index for p in points] == [0, 1, 2, 3]
        assert points[1].vector == (0, 1)

    @given(labels(), labels())
    def test_group_law(self, a, b):
        assert a + b == b + a
        assert (a - b) + b == a
        assert (a + (-a)).is_zero()
        assert a.scale(3).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolationError):
            PauliPoint(3, (1,), (0,)) + PauliPoint(5, (1,), (0,))

    def test_str(self):
        assert str(PauliPoint(3, (1, 2), (0, 1))) == "(1,2|0,1)"


class TestGauge:
    """Phase conventions and their invariants."""

    def test_gross_values(self):
        g = standard_gauge(3, 1)
        # -2^{-1} mod 3 = 1
        assert g.gamma(PauliPoint(3, (1,), (1,))) == 1
        assert g.gamma(PauliPoint(3, (2,), (1,))) == 2

    def test_even_standard_satisfies_parity(self):
        g = standard_gauge(4, 2)
        for a in enumerate_points(4, 2):
            assert g.gamma(a) % 2 == sum(p * q for p, q in zip(a.z, a.x)) % 2

    def test_gamma_of_zero_must_vanish(self):
        with pytest.raises(ContractViolationError):
            Gauge(3, 1, "standard", (((0, 0), 1),))

    def test_parity_violation(self):
        with pytest.raises(ContractViolationError):
            Gauge(2, 1, "standard", (((1, 1), 2),))

    def test_zero_rule_needs_odd_d(self):
        with pytest.raises(ContractViolationError):
            Gauge(4, 1, "zero")

    def test_with_values_overrides(self):
        g = standard_gauge(5, 1)
        a = PauliPoint(5, (1,), (0,))
        shifted = g.with_values({a: 3}, "shifted")
        assert shifted.gamma(a) == 3
        assert shifted.name == "shifted"
        assert shifted != g


class TestPauliOp:
    """Exact products against dense matrices."""

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_product_matches_dense(self, d):
        g = standard_gauge(d, 1)
        for a in enumerate_points(d, 1):
            for b in enumerate_points(d, 1):
                A, B = PauliOp(g.gamma(a), a), PauliOp(g.gamma(b), b)
                np.testing.assert_allclose(
                    pauli_matrix(g, A) @ pauli_matrix(g, B), pauli_matrix(g, A * B), atol=1e-10
                )

    def test_power_is_repeated_product(self):
        g = standard_gauge(3, 1)
        op = PauliOp(1, PauliPoint(3, (1,), (2,)))
        np.testing.assert_allclose(
            pauli_matrix(g, op.power(3)), np.linalg.matrix_power(pauli_matrix(g, op), 3), atol=1e-10
        )

    def test_negative_power_rejected(self):
        with pytest.raises(ContractViolationError):
            PauliOp.identity(3, 1).power(-1)


# ═══════════════════════════════════════════════════════════════════
# Chains and circuits
# ═══════════════════════════════════════════════════════════════════


class TestChain:
    """Z_d-combinations of basis tuples."""

    def test_restricted_tuple_rejects_non_commuting(self):
        with pytest.raises(ContractViolationError):
            PauliTuple((PauliPoint(3, (1,), (0,)), PauliPoint(3, (0,), (1,))))

    def test_unrestricted_tuple_accepts_non_commuting(self):
        cell = PauliTuple((PauliPoint(3, (1,), (0,)), PauliPoint(3, (0,), (1,))), restricted=False)
        assert cell.degree == 2

    def test_coefficients_reduce_and_cancel(self):
        a = PauliPoint(3, (1,), (0,))
        c = Chain.basis(a, a, coefficient=2)
        assert (c + c + c).is_zero()
        assert (c - c).is_zero()
        assert c.scaled(2).coefficients == {PauliTuple((a, a)): 1}

    def test_degree_mismatch(self):
        a = PauliPoint(3, (1,), (0,))
        with pytest.raises(ContractViolationError):
            Chain.basis(a) + Chain.basis(a, a)


class TestCircuit:
    """Register discipline of circuits."""

    def test_condition_before_write(self, clifford):
        g = standard_gauge(3, 1)
        gate = clifford.generator_set(3, 1)["X[0]"]
        with pytest.raises(ContractViolationError):
            Circuit(3, 1, g, (GateStep(gate, Condition(0, 1)),))

    def test_register_written_twice(self):
        g = standard_gauge(3, 1)
        a = PauliPoint(3, (1,), (0,))
        with pytest.raises(ContractViolationError):
            Circuit(3, 1, g, (MeasureStep(a, 0), MeasureStep(a, 0)))

    def test_measurement_only(self):
        g = standard_gauge(3, 1)
        a = PauliPoint(3, (1,), (0,))
        circuit = Circuit(3, 1, g, [MeasureStep(a, 0), MeasureStep(a, 1)])
        assert circuit.is_measurement_only
        assert len(circuit.measurements) == 2
