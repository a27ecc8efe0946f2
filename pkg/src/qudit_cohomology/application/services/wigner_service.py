"""Phase-point-operator Wigner functions and positive representations."""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from ...domain.algebra import (
    basis_digits, beta_values, gamma_table, label_indices, label_table,
    pauli_projector, phi_power, standard_gauge, symplectic_table
)
from ...domain.exceptions import (
    ContractViolationError, InternalConsistencyError, NotABasisError, ResourceLimitError
)
from ...domain.interfaces import IWignerService
from ...domain.models import (
    BochnerReport, CliffordGate, CovarianceCheck, Gauge, NegativityReport, PauliPoint,
    PhasePointBasis, PositiveRepresentation, PositiveRepWitness, ThetaEffect, WignerFunction
)
from .cohomology_service import CohomologyService

if TYPE_CHECKING:
    from ...infrastructure.configuration.settings import AppSettings

logger = logging.getLogger(__name__)

FRAME_CACHE_SIZE = 4


@dataclass
class PhaseSpaceFrame:
    """All phase point operators of a basis and the dual frame that expands into them."""
    operators: np.ndarray
    dual: np.ndarray

    def expand(self, matrices: np.ndarray) -> np.ndarray:
        """Coefficients over {A_w} of one operator (D, D) or a stack (m, D, D)."""
        flat = matrices.reshape(-1, self.dual.shape[1])
        coefficients = flat @ self.dual.T
        return coefficients[0] if matrices.ndim == 2 else coefficients


def pauli_stack(g: Gauge) -> np.ndarray:
    """Dense T_b for every label b, indexed by label index."""
    d, n = g.d, g.n
    table = label_table(d, n)
    digits = basis_digits(d, n)
    dimension = digits.shape[0]
    shifted = (digits[None, :, :] + table[:, None, n:]) % d
    rows = label_indices(shifted, d)
    clock = (shifted * table[:, None, :n]).sum(axis=2)
    exponent = (gamma_table(g)[:, None] + g.scale * clock) % g.modulus
    stack = np.zeros((table.shape[0], dimension, dimension), dtype=complex)
    labels = np.arange(table.shape[0])[:, None]
    stack[labels, rows, np.arange(dimension)[None, :]] = np.exp(2j * np.pi * exponent / g.modulus)
    return stack


class WignerService(IWignerService):
    """Builds phase-point bases and checks the quasiprobability axioms."""

    def __init__(self, cohomology: CohomologyService, settings: "AppSettings"):
        self.cohomology = cohomology
        self.settings = settings
        self._frames: "OrderedDict[int, Tuple[PhasePointBasis, PhaseSpaceFrame]]" = OrderedDict()

    # ------------------------------------------------------------------
    # Bases
    # ------------------------------------------------------------------

    def gross_basis(self, d: int, n: int) -> PhasePointBasis:
        """Gross gauge with c = 1."""
        if d % 2 == 0:
            raise ContractViolationError(f"the Gross basis needs odd d, got {d}")
        g = standard_gauge(d, n)
        return PhasePointBasis(g, np.ones(d ** (2 * n), dtype=complex), None, "gross")

    def coefficient_power(self, basis: PhasePointBasis, a: PauliPoint, k: int) -> complex:
        """c_a(k) = omega^{phi_a(k)} c_{ka}."""
        d = basis.d
        k = int(k) % d
        phase = int(phi_power(basis.gauge, a, k))
        return np.exp(2j * np.pi * phase / d) * basis.coefficient(a.scale(k))

    def _reality_targets(self, g: Gauge) -> np.ndarray:
        """omega^{phi_{-b}(-1)} for every label b."""
        d = g.d
        table = label_table(d, g.n)
        phases = np.array([int(phi_power(g, PauliPoint.from_vector(d, (-row).tolist()), d - 1))
                           for row in table], dtype=np.int64)
        return np.exp(2j * np.pi * phases / d)

    def validate_basis(self, basis: PhasePointBasis) -> None:
        """c_0 = 1, c_b != 0 and the reality constraint c_b* = omega^{phi_{-b}(-1)} c_{-b}."""
        tolerance = self.settings.matrix_tolerance
        c = basis.coefficients
        if abs(c[0] - 1) > tolerance:
            raise ContractViolationError(f"basis '{basis.name}' has c_0 = {c[0]}, expected 1")
        small = np.nonzero(np.abs(c) <= tolerance)[0]
        if small.size:
            point = PauliPoint.from_index(basis.d, basis.n, int(small[0]))
            raise ContractViolationError(f"basis '{basis.name}' has c_b = 0 at b = {point}")
        table = label_table(basis.d, basis.n)
        negated = label_indices(-table, basis.d)
        broken = np.abs(np.conj(c) - self._reality_targets(basis.gauge) * c[negated]) > tolerance
        if broken.any():
            point = PauliPoint.from_index(basis.d, basis.n, int(np.nonzero(broken)[0][0]))
            raise ContractViolationError(f"basis '{basis.name}' violates the reality constraint at b = {point}")

    def random_admissible_basis(self, gauge: Gauge, rng: np.random.Generator,
                                unit_modulus: bool = True) -> PhasePointBasis:
        """Random c respecting c_0 = 1 and the reality constraint."""
        d, n = gauge.d, gauge.n
        size = d ** (2 * n)
        table = label_table(d, n)
        negated = label_indices(-table, d)
        targets = self._reality_targets(gauge)
        c = np.zeros(size, dtype=complex)
        c[0] = 1.0
        for b in range(1, size):
            if c[b] != 0:
                continue
            partner = int(negated[b])
            radius = 1.0 if unit_modulus else rng.uniform(0.5, 1.5)
            if partner == b:
                # c_b^2 = conj(target): pick either square root
                root = np.sqrt(np.conj(targets[b]))
                c[b] = radius * root * (1 if rng.random() < 0.5 else -1)
            else:
                c[b] = radius * np.exp(2j * np.pi * rng.random())
                c[partner] = np.conj(c[b]) / targets[b]
        return PhasePointBasis(gauge, c, None, "random")

    def _frame(self, basis: PhasePointBasis) -> PhaseSpaceFrame:
        hit = self._frames.get(id(basis))
        if hit is not None and hit[0] is basis:
            self._frames.move_to_end(id(basis))
            return hit[1]
        d, n = basis.d, basis.n
        size = d ** (2 * n)
        if size > self.settings.max_phase_space_points or d ** n > self.settings.max_dense_dimension:
            raise ResourceLimitError(
                f"phase space Z_{d}^{2 * n} has {size} points, limit is {self.settings.max_phase_space_points}",
                "max_phase_space_points", size, self.settings.max_phase_space_points,
            )
        self.validate_basis(basis)
        dimension = d ** n
        weights = np.exp(-2j * np.pi * symplectic_table(d, n) / d) * basis.coefficients[None, :] / dimension
        adjoints = np.conj(np.transpose(pauli_stack(basis.gauge), (0, 2, 1)))
        operators = np.tensordot(weights, adjoints, axes=(1, 0))

        flat = operators.reshape(size, dimension * dimension)
        gram = flat.conj() @ flat.T
        if np.linalg.matrix_rank(gram, tol=self.settings.matrix_tolerance) < size:
            raise NotABasisError(f"phase point operators of basis '{basis.name}' are linearly dependent")
        # coefficient vector W solves gram W = M^* vec(rho)
        dual = np.linalg.solve(gram, flat.conj())
        frame = PhaseSpaceFrame(operators, dual)
        self._frames[id(basis)] = (basis, frame)
        if len(self._frames) > FRAME_CACHE_SIZE:
            self._frames.popitem(last=False)
        logger.debug("built phase-space frame for basis '%s' (d=%d, n=%d)", basis.name, d, n)
        return frame

    def phase_point_operators(self, basis: PhasePointBasis) -> np.ndarray:
        return self._frame(basis).operators

    def phase_point_operator(self, basis: PhasePointBasis, v: PauliPoint) -> np.ndarray:
        """A_v = d^-n sum_b omega^{-[v,b]} c_b T_b^dagger."""
        if (v.d, v.n) != (basis.d, basis.n):
            raise ContractViolationError(f"point {v} does not belong to the basis phase space")
        return self._frame(basis).operators[v.index].copy()

    # ------------------------------------------------------------------
    # Expansions
    # ------------------------------------------------------------------

    def wigner_of(self, basis: PhasePointBasis, rho: np.ndarray) -> WignerFunction:
        """Unique coefficients W with rho = sum_u W(u) A_u."""
        dimension = basis.d ** basis.n
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (dimension, dimension):
            raise ContractViolationError(f"operator has shape {rho.shape}, expected {dimension}x{dimension}")
        values = self._frame(basis).expand(rho)
        return WignerFunction(basis, values)

    def reconstruct(self, w: WignerFunction) -> np.ndarray:
        return np.tensordot(w.values, self._frame(w.basis).operators, axes=(0, 0))

    def negativity_witness(self, w: WignerFunction) -> NegativityReport:
        values = w.real_values(self.settings.matrix_tolerance)
        tolerance = self.settings.negativity_tolerance
        negative = np.nonzero(values < -tolerance)[0]
        points = [(PauliPoint.from_index(w.basis.d, w.basis.n, int(i)), float(values[i])) for i in negative]
        return NegativityReport(points, float(np.sum(np.maximum(0.0, -values))))

    def born_probability(self, w: WignerFunction, theta: ThetaEffect) -> float:
        return float(np.real(np.sum(w.values * theta.values)))

    @staticmethod
    def random_density_matrix(dimension: int, rng: np.random.Generator) -> np.ndarray:
        """Full-rank state from a complex Ginibre matrix."""
        ginibre = rng.normal(size=(dimension, dimension)) + 1j * rng.normal(size=(dimension, dimension))
        rho = ginibre @ ginibre.conj().T
        return rho / np.trace(rho).real

    def traciality_residual(self, basis: PhasePointBasis, rng: np.random.Generator, samples: int = 10) -> float:
        """Worst error of sum_v W(v) = 1, reconstruction and sum_v W(v) Theta(v) = Tr(Pi rho) on random states."""
        d, n = basis.d, basis.n
        worst = 0.0
        for _ in range(samples):
            rho = self.random_density_matrix(d ** n, rng)
            w = self.wigner_of(basis, rho)
            worst = max(worst, abs(w.total - 1), float(np.max(np.abs(self.reconstruct(w) - rho))))
            a = PauliPoint.from_vector(d, rng.integers(0, d, 2 * n).tolist())
            for s in range(d):
                projector = pauli_projector(basis.gauge, a, s, self.settings.max_dense_dimension)
                exact = float(np.real(np.trace(projector @ rho)))
                worst = max(worst, abs(self.born_probability(w, self.theta_effect(basis, a, s)) - exact))
        return worst

    # ------------------------------------------------------------------
    # Covariance
    # ------------------------------------------------------------------

    def covariance_report(self, basis: PhasePointBasis, gate: CliffordGate) -> CovarianceCheck:
        """Test g(A_v) = A_{S_g v + a_g}, fixing a_g from the image of A_0."""
        if (gate.d, gate.n) != (basis.d, basis.n):
            raise ContractViolationError(f"gate '{gate.name}' does not act on the basis phase space")
        d, n = basis.d, basis.n
        operators = self._frame(basis).operators
        U = gate.unitary
        moved = U @ operators @ U.conj().T
        tolerance = self.settings.match_tolerance
        distance = np.linalg.norm(operators - moved[0], axis=(1, 2))
        matches = np.nonzero(distance < tolerance)[0]
        if matches.size > 1:
            raise NotABasisError(f"image of A_0 under '{gate.name}' matches {matches.size} phase point operators")
        if matches.size == 0:
            logger.info("gate '%s': image of A_0 is not a phase point operator", gate.name)
            return CovarianceCheck(gate.name, None, float(distance.min()), PauliPoint.zero(d, n))
        translation = PauliPoint.from_index(d, n, int(matches[0]))
        table = label_table(d, n)
        targets = label_indices(table @ gate.symplectic.entries.T + np.array(translation.vector), d)
        residuals = np.linalg.norm(moved - operators[targets], axis=(1, 2))
        worst = int(np.argmax(residuals))
        if residuals[worst] > tolerance:
            failing = PauliPoint.from_index(d, n, worst)
            logger.info("gate '%s' breaks covariance at v = %s (residual %.2e)", gate.name, failing, residuals[worst])
            return CovarianceCheck(gate.name, None, float(residuals[worst]), failing)
        return CovarianceCheck(gate.name, translation, float(residuals[worst]))

    def verify_covariance(self, basis: PhasePointBasis, gate: CliffordGate) -> Optional[PauliPoint]:
        return self.covariance_report(basis, gate).translation

    # ------------------------------------------------------------------
    # Effects and positivity
    # ------------------------------------------------------------------

    def theta_effect(self, basis: PhasePointBasis, a: PauliPoint, s: int) -> ThetaEffect:
        """Theta(v) = (1/d) sum_k omega^{-k(s + [v,a])} c_a(k)."""
        d, n = basis.d, basis.n
        s = int(s) % d
        table = label_table(d, n)
        pairing = (table[:, :n] @ np.array(a.x) - table[:, n:] @ np.array(a.z)) % d
        values = np.zeros(table.shape[0], dtype=complex)
        for k in range(d):
            values += np.exp(-2j * np.pi * k * (s + pairing) / d) * self.coefficient_power(basis, a, k)
        values /= d
        imaginary = float(np.max(np.abs(values.imag)))
        if imaginary > self.settings.real_tolerance:
            raise ContractViolationError(
                f"effect of Pi_({a},{s}) has imaginary part {imaginary:.2e}; the basis violates the reality constraint"
            )
        return ThetaEffect(a, s, values.real)

    def construct_positive_rep(self, g: Gauge, x: Optional[PauliPoint] = None) -> PositiveRepresentation:
        """Re-gauge to beta = 0 and take c_a = omega^{[a,x]}; None when beta is non-trivial."""
        try:
            decision = self.cohomology.decide_beta_trivial(g)
        except ResourceLimitError as e:
            if g.d % 2 == 0:
                raise
            logger.warning("%s; using the gauge comparison witness", e)
            decision = self.cohomology.gauge_comparison_witness(g)
        if not decision.is_trivial:
            logger.info("no positive representation for %s: beta is NONTRIVIAL", g.name)
            return PositiveRepresentation(None, None, decision)
        d, n = g.d, g.n
        nu = decision.witness
        x = x if x is not None else PauliPoint.zero(d, n)
        flat = self.cohomology.trivializing_gauge(g, nu)
        table = label_table(d, n)
        pairing = (table[:, :n] @ np.array(x.x) - table[:, n:] @ np.array(x.z)) % d
        basis = PhasePointBasis(flat, np.exp(2j * np.pi * pairing / d), x, f"positive[{g.name}]")
        shifts = np.zeros(table.shape[0], dtype=np.int64)
        for point, value in nu.items():
            shifts[point.index] = int(value)
        witness = PositiveRepWitness(g, (pairing + shifts) % d, x, dict(nu))
        if not self.verify_witness(witness):
            raise InternalConsistencyError("positive representation witness fails r_a + r_b - r_(a+b) = beta")
        logger.info("positive representation built for %s (x = %s)", g.name, x)
        return PositiveRepresentation(basis, witness, decision)

    def verify_witness(self, witness: PositiveRepWitness) -> bool:
        g = witness.gauge
        left, right = self.cohomology.commuting_pairs(g)
        table = label_table(g.d, g.n)
        sums = label_indices(table[left] + table[right], g.d)
        r = np.asarray(witness.r, dtype=np.int64)
        expected = beta_values(g, left, right)
        return not ((r[left] + r[right] - r[sums] - expected) % g.d).any()

    def positivity_report(self, basis: PhasePointBasis, a: PauliPoint) -> float:
        """Largest deviation of Pi A_v Pi from delta_{s,[a,v+x]} (1/d) sum_k A_{v+ka}, over s and v."""
        d, n = basis.d, basis.n
        frame = self._frame(basis)
        size = d ** (2 * n)
        table = label_table(d, n)
        shift = basis.shift
        pairing = (np.array(a.z) @ (table[:, n:] + np.array(shift.x)).T
                   - np.array(a.x) @ (table[:, :n] + np.array(shift.z)).T) % d
        orbit = np.zeros((size, size))
        rows = np.arange(size)
        for k in range(d):
            np.add.at(orbit, (rows, label_indices(table + k * np.array(a.vector), d)), 1.0 / d)
        worst = 0.0
        for s in range(d):
            projector = pauli_projector(basis.gauge, a, s, self.settings.max_dense_dimension)
            coefficients = frame.expand(projector @ frame.operators @ projector)
            expected = orbit * (pairing == s)[:, None]
            worst = max(worst, float(np.max(np.abs(coefficients - expected))))
        return worst

    def verify_positivity_preservation(self, basis: PhasePointBasis, a: PauliPoint) -> bool:
        residual = self.positivity_report(basis, a)
        logger.debug("positivity preservation for a = %s: residual %.2e", a, residual)
        return residual <= self.settings.matrix_tolerance

    def bochner_check(self, f: np.ndarray) -> Tuple[BochnerReport, bool]:
        """Non-negative transform of f versus positive semidefiniteness of M[y, x] = f(x - y)."""
        f = np.asarray(f, dtype=complex)
        d = f.shape[0]
        tolerance = self.settings.matrix_tolerance
        k = np.arange(d)
        if np.max(np.abs(f[(-k) % d] - np.conj(f))) > tolerance:
            raise ContractViolationError("bochner_check needs f(-k) = conj(f(k))")
        circulant = f[(k[None, :] - k[:, None]) % d]
        characters = np.exp(2j * np.pi * np.outer(k, k) / d)
        fourier = characters @ f / d
        residual = float(np.max(np.abs(circulant @ characters - characters * (d * fourier)[None, :])))
        eigenvalues = np.linalg.eigvalsh(circulant)
        nonnegative = bool(np.all(fourier.real >= -tolerance) and np.all(np.abs(fourier.imag) <= tolerance))
        semidefinite = bool(np.all(eigenvalues / d >= -tolerance))
        report = BochnerReport(fourier, eigenvalues, residual, nonnegative, semidefinite)
        return report, nonnegative == semidefinite

    def check_magnitude_necessity(self, basis: PhasePointBasis) -> bool:
        """|c_b| = 1 for all b."""
        return bool(np.all(np.abs(np.abs(basis.coefficients) - 1) <= self.settings.matrix_tolerance))
