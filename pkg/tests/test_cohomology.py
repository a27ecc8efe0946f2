"""
Tests for the commutation-phase class.

Covers:
- Cocycle law of beta on commuting triples
- Triviality for odd d in any gauge and for one qubit, including random re-gaugings
- Two-qubit obstruction surviving random re-gaugings
- Mermin 2-cycles for even d with beta(F) = d/2
- Certificates from inconsistent systems
- Gauge comparison and re-gauging to beta = 0
- Resource limits
"""

import pytest

from src.qudit_cohomology.application.services import CohomologyService
from src.qudit_cohomology.domain.algebra import beta, boundary, evaluate, gauge_shift, standard_gauge
from src.qudit_cohomology.domain.exceptions import ContractViolationError, ResourceLimitError
from src.qudit_cohomology.domain.models import (
    Chain, Gauge, ModMatrix, PauliPoint, Verdict, commute, enumerate_points
)
from src.qudit_cohomology.infrastructure.configuration import AppSettings


def shifted_gauge(d, n):
    a = PauliPoint.unit(d, n, 0)
    b = PauliPoint.unit(d, n, n)
    return gauge_shift(standard_gauge(d, n), {a: 1, b: d - 1, a + b: 2}, "shifted")


# ═══════════════════════════════════════════════════════════════════
# Cocycle law
# ═══════════════════════════════════════════════════════════════════


class TestCocycle:
    """delta beta = 0 on every commuting triple."""

    @pytest.mark.parametrize("d,n", [(2, 1), (3, 1), (4, 1), (2, 2), (6, 1)])
    def test_standard_gauge(self, cohomology, d, n):
        assert cohomology.check_beta_cocycle(standard_gauge(d, n))

    def test_shifted_gauge(self, cohomology):
        assert cohomology.check_beta_cocycle(shifted_gauge(3, 1))

    def test_sampled_triples_on_large_spaces(self, solver):
        small = AppSettings(exhaustive_point_limit=16, cocycle_samples=500)
        service = CohomologyService(solver, small)
        assert service.check_beta_cocycle(standard_gauge(3, 2))


# ═══════════════════════════════════════════════════════════════════
# Triviality decisions
# ═══════════════════════════════════════════════════════════════════


class TestDecideBetaTrivial:
    """nu(a) + nu(b) - nu(a+b) = beta(a, b) is solvable exactly when [beta] = 0."""

    @pytest.mark.parametrize("d,n", [(3, 1), (3, 2), (5, 1)])
    def test_gross_gauge_needs_no_shift(self, cohomology, d, n):
        decision = cohomology.decide_beta_trivial(standard_gauge(d, n))
        assert decision.verdict is Verdict.TRIVIAL
        assert decision.witness == {}

    @pytest.mark.parametrize("d", [3, 5])
    def test_odd_d_is_trivial_in_any_gauge(self, cohomology, d):
        g = shifted_gauge(d, 1)
        decision = cohomology.decide_beta_trivial(g)
        assert decision.is_trivial
        assert cohomology.verify_trivializing(g, decision.witness)

    def test_single_qubit_is_trivial(self, cohomology):
        g = standard_gauge(2, 1)
        decision = cohomology.decide_beta_trivial(g)
        assert decision.is_trivial
        assert cohomology.verify_trivializing(g, decision.witness)

    def test_two_qubits_are_obstructed(self, cohomology):
        decision = cohomology.decide_beta_trivial(standard_gauge(2, 2))
        assert decision.verdict is Verdict.NONTRIVIAL
        assert decision.certificate_kind == "mermin"
        is_cycle, value = cohomology.verify_cycle(standard_gauge(2, 2), decision.witness)
        assert is_cycle and value == 1

    def test_trivializing_gauge_flattens_beta(self, cohomology):
        g = shifted_gauge(3, 1)
        decision = cohomology.decide_beta_trivial(g)
        flat = cohomology.trivializing_gauge(g, decision.witness)
        for a in enumerate_points(3, 1):
            for b in enumerate_points(3, 1):
                if commute(a, b):
                    assert beta(flat, a, b) == 0

    def test_wrong_witness_is_rejected(self, cohomology):
        g = standard_gauge(3, 1)
        assert not cohomology.verify_trivializing(g, {PauliPoint(3, (1,), (0,)): 1})

    def test_two_qubits_stay_obstructed_under_random_shifts(self, cohomology, random_shift):
        for _ in range(5):
            g = gauge_shift(standard_gauge(2, 2), random_shift(2, 2))
            decision = cohomology.decide_beta_trivial(g)
            assert decision.verdict is Verdict.NONTRIVIAL
            is_cycle, value = cohomology.verify_cycle(g, decision.witness)
            assert is_cycle and value % 2 == 1

    @pytest.mark.parametrize("d,n", [(3, 1), (5, 1), (3, 2)])
    def test_odd_d_stays_trivial_under_random_shifts(self, cohomology, random_shift, d, n):
        for _ in range(5):
            g = gauge_shift(standard_gauge(d, n), random_shift(d, n))
            decision = cohomology.decide_beta_trivial(g)
            assert decision.verdict is Verdict.TRIVIAL
            assert cohomology.verify_trivializing(g, decision.witness)


class TestMerminCertificate:
    """The Mermin square as a 2-cycle."""

    @pytest.mark.parametrize("d", [2, 4, 6, 8])
    def test_value_is_half_d(self, cohomology, d):
        cycle, value = cohomology.mermin_certificate(d, 2)
        assert value == d // 2
        assert boundary(cycle).is_zero()
        assert cycle.degree == 2 and cycle.restricted

    def test_beta_cochain_agrees(self, cohomology):
        cycle, value = cohomology.mermin_certificate(2, 2)
        assert int(evaluate(cohomology.beta_cochain(standard_gauge(2, 2)), cycle)) % 2 == int(value)

    def test_embeds_in_more_qudits(self, cohomology):
        cycle, value = cohomology.mermin_certificate(2, 3)
        assert value == 1
        assert all(cell.entries[0].n == 3 for cell, _ in cycle.items())

    def test_needs_even_d(self, cohomology):
        with pytest.raises(ContractViolationError):
            cohomology.mermin_certificate(3, 2)


class TestCertificates:
    """Cycles recovered from the left certificate of an inconsistent system."""

    def test_certificate_cycle_for_two_qubits(self, solver):
        service = CohomologyService(solver, AppSettings())
        g = standard_gauge(2, 2)
        matrix, rhs, first, lefts, rights = service._triviality_system(g)
        outcome = solver.solve_with_certificate(ModMatrix(matrix[first], 2), rhs[first].tolist())
        cycle = service._cycle_from_certificate(g, outcome.certificate, lefts[first], rights[first])
        is_cycle, value = service.verify_cycle(g, cycle)
        assert is_cycle
        assert value == 1

    def test_verify_cycle_rejects_non_cycles(self, cohomology):
        g = standard_gauge(2, 2)
        a = PauliPoint(2, (1, 0), (0, 0))
        assert not cohomology.verify_cycle(g, Chain.basis(a, a))[0]


class TestGaugeComparison:
    """For odd d, nu = gamma - gamma_Gross trivializes beta."""

    def test_witness_trivializes(self, cohomology):
        g = shifted_gauge(5, 1)
        decision = cohomology.gauge_comparison_witness(g)
        assert decision.is_trivial
        assert cohomology.verify_trivializing(g, decision.witness)

    def test_zero_rule(self, cohomology):
        g = Gauge(3, 1, "zero", (), "zero")
        decision = cohomology.gauge_comparison_witness(g)
        assert cohomology.verify_trivializing(g, decision.witness)

    def test_needs_odd_d(self, cohomology):
        with pytest.raises(ContractViolationError):
            cohomology.gauge_comparison_witness(standard_gauge(2, 1))


class TestResourceLimits:
    """Desk-scale limits raise instead of exhausting memory."""

    def test_phase_space_limit(self, solver):
        service = CohomologyService(solver, AppSettings(max_phase_space_points=10))
        with pytest.raises(ResourceLimitError) as info:
            service.decide_beta_trivial(standard_gauge(3, 2))
        assert info.value.limit_name == "max_phase_space_points"

    def test_system_limit(self, solver):
        service = CohomologyService(solver, AppSettings(max_system_entries=100))
        with pytest.raises(ResourceLimitError):
            service.decide_beta_trivial(standard_gauge(3, 2))
