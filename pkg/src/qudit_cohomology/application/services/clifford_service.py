"""Clifford action extraction and the covariance class."""

import logging
import time
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ...domain.algebra import label_indices, label_table, pauli_matrix, standard_gauge, symplectic_value
from ...domain.exceptions import (
    ContractViolationError, InternalConsistencyError, NotCliffordError,
    PhaseConsistencyError, ResourceLimitError
)
from ...domain.interfaces import ICliffordService, ILinearSystemSolver
from ...domain.models import (
    ClassDecision, CliffordGate, Cochain, Gauge, ModInt, ModMatrix, Obstruction,
    PauliOp, PauliPoint, PauliTuple, Verdict, enumerate_points
)
from ...infrastructure.gates import (
    check_dimension, clock_unitary, embed, fourier_unitary, phase_unitary,
    quadratic_unitary, shift_unitary, sum_unitary
)

if TYPE_CHECKING:
    from ...infrastructure.configuration.settings import AppSettings

logger = logging.getLogger(__name__)

ASSEMBLY_FACTOR = 20


class CliffordService(ICliffordService):
    """Builds verified Clifford gates and decides the covariance class."""

    def __init__(self, solver: ILinearSystemSolver, settings: "AppSettings"):
        self.solver = solver
        self.settings = settings
        self._generators: Dict[Gauge, Dict[str, CliffordGate]] = {}
        self._tables: Dict[int, Tuple[CliffordGate, np.ndarray, np.ndarray]] = {}
        self._inverses: Dict[int, Tuple[CliffordGate, CliffordGate]] = {}

    # ------------------------------------------------------------------
    # Extraction
    # ------------------------------------------------------------------

    def _read_image(self, g: Gauge, conjugated: np.ndarray, name: str, label: str) -> PauliOp:
        """Match a conjugated generator to mu^p Z(z) X(x) by direct readout."""
        d, n = g.d, g.n
        tolerance = self.settings.match_tolerance
        column = conjugated[:, 0]
        top = int(np.argmax(np.abs(column)))
        lead = column[top]
        if abs(abs(lead) - 1.0) > tolerance:
            raise NotCliffordError(f"gate '{name}': conjugate of {label} is not a Pauli operator")
        x = [(top // d ** (n - 1 - j)) % d for j in range(n)]
        z = []
        for j in range(n):
            unit = d ** (n - 1 - j)
            moved = list(x)
            moved[j] = (moved[j] + 1) % d
            row = sum(v * d ** (n - 1 - k) for k, v in enumerate(moved))
            ratio = conjugated[row, unit] / lead
            z.append(int(np.rint(np.angle(ratio) * d / (2 * np.pi))) % d)
        point = PauliPoint(d, tuple(z), tuple(x))
        prefactor = lead * np.exp(-2j * np.pi * sum(p * q for p, q in zip(z, x)) / d)
        bare = pauli_matrix(g, PauliOp(0, point), self.settings.max_dense_dimension)
        if np.max(np.abs(conjugated - prefactor * bare)) > tolerance:
            raise NotCliffordError(f"gate '{name}': conjugate of {label} is not proportional to any T_b")
        modulus = g.modulus
        exponent = int(np.rint(np.angle(prefactor) * modulus / (2 * np.pi))) % modulus
        if abs(prefactor - np.exp(2j * np.pi * exponent / modulus)) > tolerance:
            raise PhaseConsistencyError(
                f"gate '{name}': phase of the {label} image is not a power of exp(2 pi i / {modulus})"
            )
        return PauliOp(exponent, point)

    def extract_action(self, g: Gauge, unitary: np.ndarray, name: str = "U") -> CliffordGate:
        """Read S_g and the exact images of Z_j, X_j off the conjugated generators."""
        d, n = g.d, g.n
        check_dimension(d, n, self.settings.max_dense_dimension)
        U = np.asarray(unitary, dtype=complex)
        dimension = d ** n
        if U.shape != (dimension, dimension):
            raise ContractViolationError(
                f"gate '{name}' has shape {U.shape}, expected {dimension}x{dimension} for d={d}, n={n}"
            )
        if np.max(np.abs(U @ U.conj().T - np.eye(dimension))) > self.settings.match_tolerance:
            raise ContractViolationError(f"gate '{name}' is not unitary")

        adjoint = U.conj().T
        z_images = tuple(self._read_image(g, U @ embed(clock_unitary(d), j, n) @ adjoint, name, f"Z[{j}]")
                         for j in range(n))
        x_images = tuple(self._read_image(g, U @ embed(shift_unitary(d), j, n) @ adjoint, name, f"X[{j}]")
                         for j in range(n))
        columns = [op.point.vector for op in z_images + x_images]
        symplectic = ModMatrix(np.array(columns, dtype=np.int64).T, d)
        units = [PauliPoint.unit(d, n, i) for i in range(2 * n)]
        images = [op.point for op in z_images + x_images]
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                if symplectic_value(images[i], images[j]) != symplectic_value(units[i], units[j]):
                    raise NotCliffordError(f"gate '{name}' does not preserve the symplectic form")

        gate = CliffordGate(name, U, g, symplectic, z_images, x_images)
        if d ** (2 * n) <= self.settings.exhaustive_point_limit:
            for point in enumerate_points(d, n):
                gate.conjugate(point)
        logger.debug("extracted gate '%s' for d=%d, n=%d", name, d, n)
        return gate

    def dense_residual(self, gate: CliffordGate, points: Optional[Sequence[PauliPoint]] = None) -> float:
        """max |U T_a U^dagger - omega^Phi T_{S a}| over the given labels (all by default)."""
        g = gate.gauge
        if points is None:
            points = list(enumerate_points(gate.d, gate.n))
        adjoint = gate.unitary.conj().T
        worst = 0.0
        for point in points:
            phase, image = gate.conjugate(point)
            left = gate.unitary @ pauli_matrix(g, PauliOp(g.gamma(point), point)) @ adjoint
            right = pauli_matrix(g, PauliOp(g.gamma(image), image).times_omega(phase))
            worst = max(worst, float(np.max(np.abs(left - right))))
        return worst

    # ------------------------------------------------------------------
    # Gate library
    # ------------------------------------------------------------------

    def fourier_gate(self, d: int, n: int = 1, gauge: Optional[Gauge] = None) -> CliffordGate:
        """Fourier transform on qudit 0; X -> Z -> X^-1 -> Z^-1 -> X."""
        if d % 4 != 2:
            raise ContractViolationError(f"the Fourier obstruction gate needs d = 2 mod 4, got {d}")
        g = gauge if gauge is not None else standard_gauge(d, n)
        return self.extract_action(g, embed(fourier_unitary(d), 0, n), "FOURIER")

    def quadratic_gate(self, d: int, n: int = 1, gauge: Optional[Gauge] = None) -> CliffordGate:
        """d^-1 sum_{k,l} w^{mk^2} (sum_j w^{mj^2 + (k-l)j}) |k><l| on qudit 0, d = 4m."""
        if d % 4:
            raise ContractViolationError(f"the quadratic obstruction gate needs d = 0 mod 4, got {d}")
        g = gauge if gauge is not None else standard_gauge(d, n)
        single = quadratic_unitary(d)
        if np.max(np.abs(single @ single.conj().T - np.eye(d))) > self.settings.matrix_tolerance:
            raise InternalConsistencyError(f"quadratic gate for d={d} is not unitary")
        return self.extract_action(g, embed(single, 0, n), "QUAD")

    def embed_gate(self, gate: CliffordGate, qudit: int, n: int, gauge: Optional[Gauge] = None) -> CliffordGate:
        """Tensor a single-qudit gate with identities."""
        if gate.n != 1:
            raise ContractViolationError(f"only single-qudit gates embed, '{gate.name}' acts on {gate.n}")
        g = gauge if gauge is not None else standard_gauge(gate.d, n)
        base = gate.name.split("[")[0]
        return self.extract_action(g, embed(gate.unitary, qudit, n), f"{base}[{qudit}]")

    def generator_set(self, d: int, n: int, gauge: Optional[Gauge] = None) -> Dict[str, CliffordGate]:
        """Identity, F[j], P[j], X[j], Z[j] and SUM[j,j+1] keyed by name."""
        g = gauge if gauge is not None else standard_gauge(d, n)
        cached = self._generators.get(g)
        if cached is not None:
            return cached
        check_dimension(d, n, self.settings.max_dense_dimension)
        start_time = time.time()
        singles = [
            ("F", fourier_unitary(d)),
            ("P", phase_unitary(d)),
            ("X", shift_unitary(d)),
            ("Z", clock_unitary(d)),
        ]
        gates = {"I": self.extract_action(g, np.eye(d ** n, dtype=complex), "I")}
        for label, single in singles:
            for j in range(n):
                name = f"{label}[{j}]"
                gates[name] = self.extract_action(g, embed(single, j, n), name)
        for j in range(n - 1):
            name = f"SUM[{j},{j + 1}]"
            gates[name] = self.extract_action(g, sum_unitary(d, n, j, j + 1), name)
        self._generators[g] = gates
        logger.debug("built %d generators for d=%d, n=%d in %.1f ms",
                     len(gates), d, n, (time.time() - start_time) * 1000)
        return gates

    def compose(self, first: CliffordGate, second: CliffordGate) -> CliffordGate:
        """The product first * second, with images composed exactly."""
        if first.gauge != second.gauge:
            raise ContractViolationError(f"gates '{first.name}' and '{second.name}' use different gauges")
        z_images = tuple(first.image(op) for op in second.z_images)
        x_images = tuple(first.image(op) for op in second.x_images)
        return CliffordGate(
            f"{first.name}*{second.name}",
            first.unitary @ second.unitary,
            first.gauge,
            first.symplectic.matmul(second.symplectic),
            z_images,
            x_images,
        )

    def inverse(self, gate: CliffordGate) -> CliffordGate:
        hit = self._inverses.get(id(gate))
        if hit is not None and hit[0] is gate:
            return hit[1]
        result = self.extract_action(gate.gauge, gate.unitary.conj().T, f"{gate.name}^-1")
        self._inverses[id(gate)] = (gate, result)
        return result

    def regauge(self, gate: CliffordGate, gauge: Gauge) -> CliffordGate:
        """The same unitary read against another phase convention."""
        return self.extract_action(gauge, gate.unitary, gate.name)

    # ------------------------------------------------------------------
    # Covariance class
    # ------------------------------------------------------------------

    def phi_cov_eval(self, gate: CliffordGate, face: PauliTuple) -> ModInt:
        """Phi_g(a) + Phi_g(b) - Phi_g(a+b) for the face [a|b]."""
        if face.degree != 2:
            raise ContractViolationError(f"faces have degree 2, got {face}")
        a, b = face.entries
        return ModInt(gate.phase(a) + gate.phase(b) - gate.phase(a + b), gate.d)

    def _gate_tables(self, gate: CliffordGate) -> Tuple[np.ndarray, np.ndarray]:
        """(Phi_g, index of S_g a) for every label index."""
        hit = self._tables.get(id(gate))
        if hit is not None and hit[0] is gate:
            return hit[1], hit[2]
        phases, images = [], []
        for point in enumerate_points(gate.d, gate.n):
            phase, image = gate.conjugate(point)
            phases.append(phase)
            images.append(image.index)
        tables = (np.array(phases, dtype=np.int64), np.array(images, dtype=np.int64))
        self._tables[id(gate)] = (gate,) + tables
        return tables

    def _check_points(self, g: Gauge) -> int:
        points = g.d ** (2 * g.n)
        if points > self.settings.max_phase_space_points:
            raise ResourceLimitError(
                f"phase space Z_{g.d}^{2 * g.n} has {points} points; use find_obstruction on a smaller instance",
                "max_phase_space_points", points, self.settings.max_phase_space_points,
            )
        return points

    @staticmethod
    def _edges(d: int, a: int, b: int, s: int) -> Dict[int, int]:
        edges: Dict[int, int] = {}
        for index, sign in ((a, 1), (b, 1), (s, -1)):
            edges[index] = (edges.get(index, 0) + sign) % d
        return {k: v for k, v in edges.items() if v}

    def is_invariant_face(self, gate: CliffordGate, face: PauliTuple) -> bool:
        """g(boundary f) == boundary f as chains."""
        a, b = face.entries
        before = self._edges(gate.d, a.index, b.index, (a + b).index)
        after = self._edges(gate.d, gate.map_point(a).index, gate.map_point(b).index,
                            gate.map_point(a + b).index)
        return before == after

    def find_obstruction(self, g: Gauge, gates: Sequence[CliffordGate]) -> Optional[Obstruction]:
        """First (gate, [a|b]) in gate order, then label-index order, with g df = df and Phi(df) != 0."""
        size = self._check_points(g)
        d, n = g.d, g.n
        table = label_table(d, n)
        for gate in gates:
            phases, images = self._gate_tables(gate)
            for a in range(size):
                others = np.arange(a, size)
                sums = label_indices(table[a] + table[others], d)
                values = (phases[a] + phases[others] - phases[sums]) % d
                for k in np.nonzero(values)[0]:
                    b, s = int(others[k]), int(sums[k])
                    if self._edges(d, a, b, s) != self._edges(d, images[a], images[b], images[s]):
                        continue
                    u = PauliPoint.from_index(d, n, a)
                    v = PauliPoint.from_index(d, n, b)
                    logger.info("obstruction for gate '%s' on face [%s|%s] with value %d",
                                gate.name, u, v, int(values[k]))
                    return Obstruction(gate, PauliTuple((u, v), restricted=False), int(values[k]),
                                       (int(phases[a]), int(phases[b]), int(phases[s])))
        return None

    def lemma_obstruction(self, g: Gauge) -> Obstruction:
        """The explicit invariant face with value d/2 for even d, on qudit 0."""
        d, n = g.d, g.n
        if d % 2:
            raise ContractViolationError(f"the explicit obstruction exists for even d only, got {d}")
        rest = (0,) * (n - 1)
        half = d // 2
        if d % 4 == 2:
            gate = self.fourier_gate(d, n, g)
            u = PauliPoint(d, (half,) + rest, (0,) + rest)
            v = PauliPoint(d, (0,) + rest, (half,) + rest)
        else:
            gate = self.quadratic_gate(d, n, g)
            u = PauliPoint(d, (1,) + rest, (0,) + rest)
            v = PauliPoint(d, (1,) + rest, (half,) + rest)
        face = PauliTuple((u, v), restricted=False)
        value = self.phi_cov_eval(gate, face)
        if not self.is_invariant_face(gate, face) or value != half:
            raise InternalConsistencyError(
                f"gate '{gate.name}' face {face} gives {int(value)}, expected an invariant face with {half}"
            )
        return Obstruction(gate, face, int(value), (gate.phase(u), gate.phase(v), gate.phase(u + v)))

    @staticmethod
    def _covariance_rows(d: int, size: int, phases: np.ndarray, images: np.ndarray,
                         left: np.ndarray, right: np.ndarray, sums: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Distinct non-zero rows of the covariance system for one gate and a slice of faces."""
        positions = np.arange(left.size)
        block = np.zeros((left.size, size), dtype=np.int8)
        for columns, sign in ((left, 1), (right, 1), (sums, -1),
                              (images[left], -1), (images[right], -1), (images[sums], 1)):
            np.add.at(block, (positions, columns), sign)
        block = np.mod(block[:, 1:], d).astype(np.int8)
        rhs = ((phases[left] + phases[right] - phases[sums]) % d).astype(np.int8)
        stacked = np.column_stack([block, rhs])
        live = np.nonzero(stacked.any(axis=1))[0]
        if not live.size:
            return block[:0], rhs[:0]
        _, first = np.unique(stacked[live], axis=0, return_index=True)
        keep = live[np.sort(first)]
        return block[keep], rhs[keep]

    def decide_phi_cov_trivial(self, g: Gauge, gates: Sequence[CliffordGate]) -> ClassDecision:
        """Solve nu(df) - nu(S_g df) = Phi_g(df) over all gates and faces [a|b]."""
        start_time = time.time()
        d, n = g.d, g.n
        size = self._check_points(g)
        for gate in gates:
            if (gate.d, gate.n) != (d, n):
                raise ContractViolationError(f"gate '{gate.name}' does not act on (d={d}, n={n})")
        table = label_table(d, n)
        left, right = np.triu_indices(size)
        raw = left.size * size
        if raw > ASSEMBLY_FACTOR * self.settings.max_system_entries:
            raise ResourceLimitError(
                f"covariance system over {left.size} faces is too large to assemble; use find_obstruction instead",
                "max_system_entries", raw, self.settings.max_system_entries,
            )
        sums = label_indices(table[left] + table[right], d)
        chunk = max(1, self.settings.max_system_entries // size)

        blocks, targets = [], []
        for gate in gates:
            phases, images = self._gate_tables(gate)
            for lo in range(0, left.size, chunk):
                hi = lo + chunk
                block, rhs = self._covariance_rows(d, size, phases, images, left[lo:hi], right[lo:hi], sums[lo:hi])
                if block.shape[0]:
                    blocks.append(block)
                    targets.append(rhs)

        unknowns = size - 1
        if not blocks:
            logger.info("covariance class is TRIVIAL: every gate row vanishes")
            return ClassDecision(Verdict.TRIVIAL, {}, "coboundary", {"equations": 0, "unknowns": unknowns})
        matrix = np.vstack(blocks).astype(np.int64)
        rhs = np.concatenate(targets).astype(np.int64)
        stacked = np.column_stack([matrix, rhs])
        _, first = np.unique(stacked, axis=0, return_index=True)
        matrix, rhs = matrix[np.sort(first)], rhs[np.sort(first)]
        entries = matrix.shape[0] * unknowns
        if entries > self.settings.max_system_entries:
            raise ResourceLimitError(
                f"covariance system has {matrix.shape[0]}x{unknowns} entries; use find_obstruction instead",
                "max_system_entries", entries, self.settings.max_system_entries,
            )
        details = {"equations": int(matrix.shape[0]), "unknowns": unknowns, "gates": [gt.name for gt in gates]}
        logger.debug("covariance system: %d equations, %d unknowns", matrix.shape[0], unknowns)

        solution = self.solver.solve(ModMatrix(matrix, d), rhs.tolist())
        details["runtime_ms"] = (time.time() - start_time) * 1000
        if solution is not None:
            x = np.array([int(v) for v in solution], dtype=np.int64)
            if ((matrix @ x - rhs) % d).any():
                raise InternalConsistencyError("covariance solution fails its own system")
            nu = {PauliPoint.from_index(d, n, i + 1): int(v) for i, v in enumerate(x) if v}
            logger.info("covariance class is TRIVIAL for %s (d=%d, n=%d)", g.name, d, n)
            return ClassDecision(Verdict.TRIVIAL, nu, "coboundary", details)

        obstruction = self.find_obstruction(g, gates)
        kind = "obstruction"
        if obstruction is None and d % 2 == 0:
            obstruction = self.lemma_obstruction(g)
            kind = "lemma-obstruction"
        logger.info("covariance class is NONTRIVIAL for %s (d=%d, n=%d)", g.name, d, n)
        return ClassDecision(Verdict.NONTRIVIAL, obstruction, kind, details)

    def verify_trivializing(self, g: Gauge, gates: Sequence[CliffordGate], nu: Mapping[PauliPoint, int]) -> bool:
        """Phi_g - nu + nu o S_g vanishes on every boundary, for every gate."""
        size = self._check_points(g)
        d = g.d
        table = label_table(d, g.n)
        values = np.zeros(size, dtype=np.int64)
        for point, value in nu.items():
            values[point.index] = int(value)
        chunk = max(1, self.settings.max_system_entries // (size * table.shape[1]))
        for gate in gates:
            phases, images = self._gate_tables(gate)
            shifted = (phases - values + values[images]) % d
            for lo in range(0, size, chunk):
                rows = np.arange(lo, min(size, lo + chunk))
                sums = label_indices(table[rows][:, None, :] + table[None, :, :], d)
                if ((shifted[rows][:, None] + shifted[None, :] - shifted[sums]) % d).any():
                    logger.info("covariance witness fails for gate '%s'", gate.name)
                    return False
        return True

    def linear_phase_vector(self, gate: CliffordGate) -> Optional[PauliPoint]:
        """x_g with Phi_g(a) = [x_g, a] for all a, when Phi_g is linear."""
        d, n = gate.d, gate.n
        z = [gate.phase(PauliPoint.unit(d, n, n + j)) for j in range(n)]
        x = [-gate.phase(PauliPoint.unit(d, n, j)) for j in range(n)]
        candidate = PauliPoint(d, tuple(z), tuple(x))
        size = d ** (2 * n)
        if size <= self.settings.max_phase_space_points:
            points = enumerate_points(d, n)
        else:
            rng = np.random.default_rng(self.settings.default_seed)
            points = (PauliPoint.from_vector(d, rng.integers(0, d, 2 * n).tolist())
                      for _ in range(self.settings.cocycle_samples))
        for point in points:
            if gate.phase(point) != symplectic_value(candidate, point):
                return None
        return candidate

    def shift_phase_cochain(self, gate: CliffordGate, nu: Mapping[PauliPoint, int]) -> Cochain:
        """Phi_g(a) + nu(a) - nu(S_g a): the phase cochain after re-gauging by nu."""
        def rule(cell: PauliTuple) -> int:
            a = cell.entries[0]
            return gate.phase(a) + nu.get(a, 0) - nu.get(gate.map_point(a), 0)
        return Cochain(gate.d, 1, rule, f"Phi[{gate.name}]+nu")

    def generator_list(self, d: int, n: int, gauge: Optional[Gauge] = None) -> List[CliffordGate]:
        return list(self.generator_set(d, n, gauge).values())
