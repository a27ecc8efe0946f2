"""Commutation-phase class service."""

import logging
import time
from typing import TYPE_CHECKING, Mapping, Optional, Tuple

import numpy as np

from ...domain.algebra import (
    beta, beta_values, boundary, evaluate, gamma_table, gauge_shift, label_indices,
    label_table, standard_gauge, symplectic_rows
)
from ...domain.exceptions import ContractViolationError, InternalConsistencyError, ResourceLimitError
from ...domain.interfaces import ICohomologyService, ILinearSystemSolver
from ...domain.models import (
    Chain, ClassDecision, Cochain, Gauge, ModInt, ModMatrix, PauliPoint, PauliTuple, Verdict
)

if TYPE_CHECKING:
    from ...infrastructure.configuration.settings import AppSettings

logger = logging.getLogger(__name__)

ROW_CHUNK = 256


class CohomologyService(ICohomologyService):
    """Decides triviality of beta on the commuting complex."""

    def __init__(self, solver: ILinearSystemSolver, settings: "AppSettings"):
        self.solver = solver
        self.settings = settings

    def _check_size(self, g: Gauge) -> int:
        points = g.d ** (2 * g.n)
        if points > self.settings.max_phase_space_points:
            raise ResourceLimitError(
                f"phase space Z_{g.d}^{2 * g.n} has {points} points, limit is "
                f"{self.settings.max_phase_space_points}",
                "max_phase_space_points", points, self.settings.max_phase_space_points,
            )
        return points

    def beta_cochain(self, g: Gauge) -> Cochain:
        return Cochain(g.d, 2, lambda cell: int(beta(g, *cell.entries)), f"beta[{g.name}]")

    def commuting_pairs(self, g: Gauge) -> Tuple[np.ndarray, np.ndarray]:
        """Index arrays (left, right) of every commuting pair with left <= right."""
        self._check_size(g)
        table = label_table(g.d, g.n)
        lefts, rights = [], []
        for start in range(0, table.shape[0], ROW_CHUNK):
            rows = np.arange(start, min(start + ROW_CHUNK, table.shape[0]))
            form = symplectic_rows(table, rows, g.d)
            i, j = np.nonzero(form == 0)
            keep = j >= rows[i]
            lefts.append(rows[i][keep])
            rights.append(j[keep])
        return np.concatenate(lefts), np.concatenate(rights)

    def _commuting_triples(self, g: Gauge) -> Tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
        d, n = g.d, g.n
        table = label_table(d, n)
        size = table.shape[0]
        if size <= self.settings.exhaustive_point_limit:
            form = symplectic_rows(table, np.arange(size), d) == 0
            a, b, c = np.nonzero(form[:, :, None] & form[:, None, :] & form[None, :, :])
            return a, b, c, True
        logger.warning("Z_%d^%d is too large for exhaustive triples; sampling %d",
                       d, 2 * n, self.settings.cocycle_samples)
        rng = np.random.default_rng(self.settings.default_seed)
        found = [np.empty(0, dtype=np.int64)] * 3
        while found[0].size < self.settings.cocycle_samples:
            draw = rng.integers(0, size, size=(3, 4 * self.settings.cocycle_samples))
            vectors = [table[row] for row in draw]
            ok = np.ones(draw.shape[1], dtype=bool)
            for p, q in ((0, 1), (0, 2), (1, 2)):
                form = (vectors[p][:, :n] * vectors[q][:, n:]).sum(1) \
                    - (vectors[p][:, n:] * vectors[q][:, :n]).sum(1)
                ok &= form % d == 0
            found = [np.concatenate([found[k], draw[k][ok]]) for k in range(3)]
        limit = self.settings.cocycle_samples
        return found[0][:limit], found[1][:limit], found[2][:limit], False

    def check_beta_cocycle(self, g: Gauge) -> bool:
        """(delta beta)(a, b, c) = beta(b,c) - beta(a+b,c) + beta(a,b+c) - beta(a,b) = 0."""
        a, b, c, exhaustive = self._commuting_triples(g)
        table = label_table(g.d, g.n)
        gammas = gamma_table(g)
        ab = label_indices(table[a] + table[b], g.d)
        bc = label_indices(table[b] + table[c], g.d)
        value = (beta_values(g, b, c, gammas) - beta_values(g, ab, c, gammas)
                 + beta_values(g, a, bc, gammas) - beta_values(g, a, b, gammas)) % g.d
        bad = np.nonzero(value)[0]
        if bad.size:
            k = int(bad[0])
            logger.info("beta fails the cocycle law at (%s, %s, %s)",
                        *(PauliPoint.from_index(g.d, g.n, int(x[k])) for x in (a, b, c)))
            return False
        logger.info("beta is a cocycle on %d %s triples", a.size, "exhaustive" if exhaustive else "sampled")
        return True

    def _triviality_system(self, g: Gauge):
        d = g.d
        size = self._check_size(g)
        left, right = self.commuting_pairs(g)
        gammas = gamma_table(g)
        forward = beta_values(g, left, right, gammas)
        backward = beta_values(g, right, left, gammas)
        flipped = forward != backward
        rows_left = np.concatenate([left, right[flipped]])
        rows_right = np.concatenate([right, left[flipped]])
        rhs = np.concatenate([forward, backward[flipped]])

        entries = rows_left.size * (size - 1)
        if entries > self.settings.max_system_entries:
            raise ResourceLimitError(
                f"triviality system for d={d}, n={g.n} needs {rows_left.size}x{size - 1} entries",
                "max_system_entries", entries, self.settings.max_system_entries,
            )
        table = label_table(d, g.n)
        sums = label_indices(table[rows_left] + table[rows_right], d)
        matrix = np.zeros((rows_left.size, size), dtype=np.int64)
        positions = np.arange(rows_left.size)
        np.add.at(matrix, (positions, rows_left), 1)
        np.add.at(matrix, (positions, rows_right), 1)
        np.add.at(matrix, (positions, sums), -1)
        matrix = matrix[:, 1:] % d

        stacked = np.column_stack([matrix, rhs])
        _, first = np.unique(stacked, axis=0, return_index=True)
        first = np.sort(first)
        first = first[stacked[first].any(axis=1)]
        logger.debug("beta system: %d pairs, %d distinct equations, %d unknowns",
                     left.size, first.size, size - 1)
        return matrix, rhs, first, rows_left, rows_right

    def decide_beta_trivial(self, g: Gauge) -> ClassDecision:
        """Solve nu(a) + nu(b) - nu(a+b) = beta(a, b) over all commuting pairs."""
        start_time = time.time()
        d, n = g.d, g.n
        matrix, rhs, first, rows_left, rows_right = self._triviality_system(g)
        A = ModMatrix(matrix[first], d)
        b = rhs[first].tolist()
        details = {"equations": int(first.size), "unknowns": int(matrix.shape[1])}

        solution = self.solver.solve(A, b)
        if solution is not None:
            x = np.array([int(v) for v in solution], dtype=np.int64)
            if ((matrix @ x - rhs) % d).any():
                raise InternalConsistencyError("coboundary solution fails the full beta system")
            nu = {PauliPoint.from_index(d, n, i + 1): int(v) for i, v in enumerate(x) if v}
            details["runtime_ms"] = (time.time() - start_time) * 1000
            logger.info("beta is TRIVIAL for %s (d=%d, n=%d)", g.name, d, n)
            return ClassDecision(Verdict.TRIVIAL, nu, "coboundary", details)

        if d % 2 == 0 and n >= 2:
            cycle, value = self.mermin_certificate(d, n, g)
            details["beta_value"] = int(value)
            logger.info("beta is NONTRIVIAL for %s; Mermin cycle gives %d", g.name, int(value))
            return ClassDecision(Verdict.NONTRIVIAL, cycle, "mermin", details)

        rows = first.size
        if rows * rows > self.settings.max_system_entries:
            raise ResourceLimitError(
                f"certificate extraction would track a {rows}x{rows} transform",
                "max_system_entries", rows * rows, self.settings.max_system_entries,
            )
        outcome = self.solver.solve_with_certificate(A, b)
        cycle = self._cycle_from_certificate(g, outcome.certificate, rows_left[first], rows_right[first])
        value = evaluate(self.beta_cochain(g), cycle)
        details["beta_value"] = int(value)
        logger.info("beta is NONTRIVIAL for %s; certificate cycle gives %d", g.name, int(value))
        return ClassDecision(Verdict.NONTRIVIAL, cycle, "inconsistency", details)

    def _cycle_from_certificate(self, g: Gauge, certificate, lefts: np.ndarray,
                                rights: np.ndarray) -> Chain:
        d, n = g.d, g.n
        point = lambda i: PauliPoint.from_index(d, n, int(i))
        terms = [(PauliTuple((point(lefts[i]), point(rights[i]))), y)
                 for i, y in enumerate(certificate) if y % d]
        cycle = Chain.from_terms(d, 2, terms)
        zero = PauliPoint.zero(d, n)
        stray = boundary(cycle).coefficients.get(PauliTuple((zero,)), 0)
        cycle = cycle - Chain.basis(zero, zero, coefficient=stray)
        if not boundary(cycle).is_zero():
            raise InternalConsistencyError("certificate combination is not a cycle")
        if evaluate(self.beta_cochain(g), cycle) == 0:
            raise InternalConsistencyError("certificate cycle carries no beta value")
        return cycle

    def mermin_certificate(self, d: int, n: int, gauge: Optional[Gauge] = None) -> Tuple[Chain, ModInt]:
        """The Mermin square on the first two qudits as a 2-cycle.

        F = [c|d] + [a+b|c+d] + [a|b] - [b|d] - [a+c|b+d] - [a|c] with
        a = Z^-1 x I, b = I x Z, c = I x X^{d/2}, d = X^{d/2} x I.
        """
        if d % 2 or n < 2:
            raise ContractViolationError(f"the Mermin cycle needs even d and n >= 2, got d={d}, n={n}")
        g = gauge if gauge is not None else standard_gauge(d, n)
        half = d // 2
        rest = (0,) * (n - 2)
        label = lambda z, x: PauliPoint(d, z + rest, x + rest)
        a = label((-1, 0), (0, 0))
        b = label((0, 1), (0, 0))
        c = label((0, 0), (0, half))
        e = label((0, 0), (half, 0))
        faces = [(c, e, 1), (a + b, c + e, 1), (a, b, 1), (b, e, -1), (a + c, b + e, -1), (a, c, -1)]
        cycle = Chain.from_terms(d, 2, [(PauliTuple((u, v)), sign) for u, v, sign in faces])
        if not boundary(cycle).is_zero():
            raise InternalConsistencyError("Mermin chain has a non-zero boundary")
        value = evaluate(self.beta_cochain(g), cycle)
        if value != half:
            raise InternalConsistencyError(f"beta on the Mermin cycle is {int(value)}, expected {half}")
        return cycle, value

    def gauge_comparison_witness(self, g: Gauge) -> ClassDecision:
        """For odd d, nu = gamma - gamma_Gross trivializes beta without a linear solve."""
        d, n = g.d, g.n
        if d % 2 == 0:
            raise ContractViolationError("gauge comparison needs odd d")
        reference = standard_gauge(d, n)
        if g.rule == "zero":
            self._check_size(g)
            nu = {PauliPoint.from_index(d, n, i): int(v)
                  for i, v in enumerate((gamma_table(g) - gamma_table(reference)) % d) if v}
        else:
            nu = {}
            for vector, value in g.overrides:
                point = PauliPoint.from_vector(d, vector)
                shift = (value - reference.gamma(point)) % d
                if shift:
                    nu[point] = shift
        checked = self._spot_check(g, nu)
        logger.info("beta is TRIVIAL for %s via gauge comparison (%d pairs checked)", g.name, checked)
        return ClassDecision(Verdict.TRIVIAL, nu, "gauge-comparison", {"checked_pairs": checked})

    def _spot_check(self, g: Gauge, nu: Mapping[PauliPoint, int]) -> int:
        rng = np.random.default_rng(self.settings.default_seed)
        d, n = g.d, g.n
        checked = 0
        limit = min(self.settings.cocycle_samples, 2000)
        while checked < limit:
            a = PauliPoint.from_vector(d, rng.integers(0, d, 2 * n).tolist())
            b = PauliPoint.from_vector(d, rng.integers(0, d, 2 * n).tolist())
            if (sum(p * q for p, q in zip(a.z, b.x)) - sum(p * q for p, q in zip(a.x, b.z))) % d:
                continue
            if (nu.get(a, 0) + nu.get(b, 0) - nu.get(a + b, 0) - int(beta(g, a, b))) % d:
                raise InternalConsistencyError(f"gauge comparison witness fails at ({a}, {b})")
            checked += 1
        return checked

    def trivializing_gauge(self, g: Gauge, nu: Mapping[PauliPoint, int]) -> Gauge:
        """gamma' = gamma - scale * nu, in which beta vanishes when delta nu = beta."""
        return gauge_shift(g, {point: -value for point, value in nu.items()}, f"{g.name}-nu")

    def verify_trivializing(self, g: Gauge, nu: Mapping[PauliPoint, int]) -> bool:
        """Re-check nu(a) + nu(b) - nu(a+b) = beta(a, b) on commuting pairs."""
        if g.d ** (2 * g.n) > self.settings.max_phase_space_points:
            try:
                self._spot_check(g, nu)
            except InternalConsistencyError:
                return False
            return True
        left, right = self.commuting_pairs(g)
        table = label_table(g.d, g.n)
        values = np.zeros(table.shape[0], dtype=np.int64)
        for point, value in nu.items():
            values[point.index] = int(value)
        sums = label_indices(table[left] + table[right], g.d)
        gammas = gamma_table(g)
        for first, second in ((left, right), (right, left)):
            expected = beta_values(g, first, second, gammas)
            if ((values[first] + values[second] - values[sums] - expected) % g.d).any():
                return False
        return True

    def verify_cycle(self, g: Gauge, cycle: Chain) -> Tuple[bool, int]:
        """(is a non-trivial cycle, beta value)."""
        if cycle.degree != 2 or not cycle.restricted:
            return False, 0
        value = int(evaluate(self.beta_cochain(g), cycle))
        return boundary(cycle).is_zero() and value != 0, value
