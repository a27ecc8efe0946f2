"""Clifford elimination and phase-space sampling for circuits with magic states."""

import logging
from collections import Counter, defaultdict
from itertools import product
from typing import TYPE_CHECKING, Dict, List, Mapping, Tuple, Union

import numpy as np
from scipy import stats

from ...domain.algebra import label_table, pauli_projector
from ...domain.exceptions import ContractViolationError, ResourceLimitError
from ...domain.interfaces import ISamplingService
from ...domain.models import (
    Circuit, CompiledBranch, CompiledCircuit, GateStep, MeasureStep, PauliPoint,
    PhasePointBasis, PositiveRepWitness, SamplerState, SamplingResult, WignerFunction
)
from .clifford_service import CliffordService

if TYPE_CHECKING:
    from ...infrastructure.configuration.settings import AppSettings

logger = logging.getLogger(__name__)

MIN_BRANCH_WEIGHT = 1e-15
MIN_EXPECTED_COUNT = 5.0


def outcome_key(outcomes) -> str:
    return ",".join(str(int(s)) for s in outcomes)


class SamplingService(ISamplingService):
    """Compiles circuits to measurement-only form and samples them."""

    def __init__(self, clifford: CliffordService, settings: "AppSettings"):
        self.clifford = clifford
        self.settings = settings

    # ------------------------------------------------------------------
    # Compilation
    # ------------------------------------------------------------------

    def compile_measurement_only(self, circuit: Circuit) -> CompiledCircuit:
        """Pull every measurement back through the preceding gates.

        W^dagger T_a W = omega^shift T_b for W the gates applied so far, so the
        measurement becomes T_b with recorded outcome = raw outcome + shift.
        Conditioned gates are resolved by one branch per assignment of the
        conditioning registers.
        """
        d = circuit.d
        registers = sorted({step.condition.register for step in circuit.steps
                            if isinstance(step, GateStep) and step.condition is not None})
        branches = []
        for values in product(range(d), repeat=len(registers)):
            assumed = dict(zip(registers, values))
            inverses = []
            steps: List[MeasureStep] = []
            for step in circuit.steps:
                if isinstance(step, GateStep):
                    condition = step.condition
                    if condition is None or assumed[condition.register] == condition.value % d:
                        gate = step.gate
                        if gate.gauge != circuit.gauge:
                            gate = self.clifford.regauge(gate, circuit.gauge)
                        inverses.append(self.clifford.inverse(gate))
                    continue
                label, shift = step.a, step.outcome_shift
                for inverse in reversed(inverses):
                    phase, label = inverse.conjugate(label)
                    shift += phase
                steps.append(MeasureStep(label, step.register, shift % d))
            compiled = Circuit(d, circuit.n, circuit.gauge, tuple(steps))
            branches.append(CompiledBranch(tuple(sorted(assumed.items())), compiled))
        logger.debug("compiled circuit into %d measurement-only branches", len(branches))
        return CompiledCircuit(circuit, tuple(branches))

    @staticmethod
    def _as_compiled(circuit: Union[Circuit, CompiledCircuit]) -> CompiledCircuit:
        if isinstance(circuit, CompiledCircuit):
            return circuit
        if not circuit.is_measurement_only:
            raise ContractViolationError("circuit contains gates; compile it to measurement-only form first")
        return CompiledCircuit(circuit, (CompiledBranch((), circuit),))

    # ------------------------------------------------------------------
    # Exact oracle
    # ------------------------------------------------------------------

    def _check_oracle_limits(self, circuit: Circuit) -> None:
        dimension = circuit.d ** circuit.n
        if dimension > self.settings.oracle_max_dimension:
            raise ResourceLimitError(
                f"exact oracle limited to dimension {self.settings.oracle_max_dimension}, got {dimension}",
                "oracle_max_dimension", dimension, self.settings.oracle_max_dimension,
            )
        count = len(circuit.measurements)
        if count > self.settings.oracle_max_measurements:
            raise ResourceLimitError(
                f"exact oracle limited to {self.settings.oracle_max_measurements} measurements, got {count}",
                "oracle_max_measurements", count, self.settings.oracle_max_measurements,
            )

    def _born_tree(self, circuit: Circuit, rho: np.ndarray) -> Dict[Tuple[int, ...], float]:
        """Outcome tuples and probabilities by Lueders updates along the circuit."""
        d = circuit.d
        projectors: Dict[Tuple[int, int], np.ndarray] = {}
        results: Dict[Tuple[int, ...], float] = defaultdict(float)

        def projector(a: PauliPoint, s: int) -> np.ndarray:
            key = (a.index, s)
            if key not in projectors:
                projectors[key] = pauli_projector(circuit.gauge, a, s, self.settings.oracle_max_dimension)
            return projectors[key]

        def walk(position: int, state: np.ndarray, weight: float,
                 outcomes: Tuple[int, ...], registers: Mapping[int, int]) -> None:
            if position == len(circuit.steps):
                results[outcomes] += weight
                return
            step = circuit.steps[position]
            if isinstance(step, GateStep):
                condition = step.condition
                if condition is None or registers[condition.register] == condition.value % d:
                    U = step.gate.unitary
                    state = U @ state @ U.conj().T
                walk(position + 1, state, weight, outcomes, registers)
                return
            for s in range(d):
                P = projector(step.a, s)
                projected = P @ state @ P
                probability = float(np.real(np.trace(projected)))
                if probability <= MIN_BRANCH_WEIGHT:
                    continue
                recorded = (s + step.outcome_shift) % d
                walk(position + 1, projected / probability, weight * probability,
                     outcomes + (recorded,), {**registers, step.register: recorded})

        walk(0, rho, 1.0, (), {})
        return results

    def exact_distribution(self, circuit: Union[Circuit, CompiledCircuit],
                           rho: np.ndarray) -> Dict[str, float]:
        """Born-rule distribution of recorded outcome strings."""
        compiled = circuit if isinstance(circuit, CompiledCircuit) else None
        source = compiled.source if compiled is not None else circuit
        self._check_oracle_limits(source)
        dimension = source.d ** source.n
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (dimension, dimension):
            raise ContractViolationError(f"input state has shape {rho.shape}, expected {dimension}x{dimension}")
        if abs(np.trace(rho) - 1) > self.settings.matrix_tolerance:
            raise ContractViolationError(f"input state has trace {np.trace(rho):.6f}, expected 1")

        if compiled is None:
            tree = self._born_tree(source, rho)
        else:
            tree = defaultdict(float)
            for branch in compiled.branches:
                order = [step.register for step in branch.circuit.measurements]
                for outcomes, probability in self._born_tree(branch.circuit, rho).items():
                    if branch.consistent_with(dict(zip(order, outcomes))):
                        tree[outcomes] += probability
        return {outcome_key(outcomes): probability for outcomes, probability in sorted(tree.items())}

    # ------------------------------------------------------------------
    # Phase-space sampling
    # ------------------------------------------------------------------

    def _input_distribution(self, w_in: Union[WignerFunction, np.ndarray], size: int,
                            d: int, n: int) -> np.ndarray:
        values = w_in.real_values(self.settings.matrix_tolerance) if isinstance(w_in, WignerFunction) \
            else np.real_if_close(np.asarray(w_in)).astype(float)
        if values.shape != (size,):
            raise ContractViolationError(f"input Wigner function has {values.shape[0]} values, expected {size}")
        negative = np.nonzero(values < -self.settings.negativity_tolerance)[0]
        if negative.size:
            shown = ", ".join(f"{PauliPoint.from_index(d, n, int(i))}: {values[i]:.3g}" for i in negative[:10])
            raise ContractViolationError(
                f"input Wigner function is negative at {negative.size} points ({shown}); "
                "sampling needs a non-negative representation"
            )
        weights = np.clip(values, 0.0, None)
        return weights / weights.sum()

    def simulate_sampling(self, basis: PhasePointBasis, witness: PositiveRepWitness,
                          circuit: Union[Circuit, CompiledCircuit],
                          w_in: Union[WignerFunction, np.ndarray],
                          shots: int, seed: int) -> SamplingResult:
        """Draw v ~ W_in; each measurement of a outputs r_a + [a, v] and moves v to v + k a."""
        compiled = self._as_compiled(circuit)
        source = compiled.source
        d, n = source.d, source.n
        if d % 2 == 0:
            raise ContractViolationError(f"phase-space sampling needs odd d, got {d}")
        if witness.gauge != source.gauge:
            raise ContractViolationError("positive-representation witness and circuit use different gauges")
        if (basis.d, basis.n) != (d, n):
            raise ContractViolationError("basis does not match the circuit dimensions")
        if shots < 1:
            raise ContractViolationError(f"shots must be positive, got {shots}")

        size = d ** (2 * n)
        probabilities = self._input_distribution(w_in, size, d, n)
        table = label_table(d, n)
        r = np.asarray(witness.r, dtype=np.int64)
        branches = compiled.branches
        depth = len(branches[0].circuit.steps)

        batch_size = self.settings.shot_batch_size
        sizes = [min(batch_size, shots - start) for start in range(0, shots, batch_size)]
        children = np.random.SeedSequence(seed).spawn(len(sizes))
        counts: Counter = Counter()
        for batch, child in zip(sizes, children):
            rng = np.random.default_rng(child)
            points = table[rng.choice(size, size=batch, p=probabilities)].copy()
            if depth == 0:
                counts[""] += batch
                continue
            alive = np.ones((batch, len(branches)), dtype=bool)
            outcomes = np.zeros((batch, depth), dtype=np.int64)
            for position in range(depth):
                done = np.zeros(batch, dtype=bool)
                for column, branch in enumerate(branches):
                    mask = alive[:, column] & ~done
                    if not mask.any():
                        continue
                    step = branch.circuit.steps[position]
                    a = np.array(step.a.vector, dtype=np.int64)
                    selected = points[mask]
                    pairing = (selected[:, n:] @ a[:n] - selected[:, :n] @ a[n:]) % d
                    outcomes[mask, position] = (r[step.a.index] + pairing + step.outcome_shift) % d
                    moves = rng.integers(0, d, size=selected.shape[0])
                    points[mask] = (selected + moves[:, None] * a[None, :]) % d
                    done |= mask
                register = branches[0].circuit.steps[position].register
                for column, branch in enumerate(branches):
                    expected = branch.assumed.get(register)
                    if expected is not None:
                        alive[:, column] &= outcomes[:, position] == expected
            rows, tallies = np.unique(outcomes, axis=0, return_counts=True)
            for row, tally in zip(rows, tallies):
                counts[outcome_key(row)] += int(tally)
        logger.info("sampled %d shots in %d batches (seed %d)", shots, len(sizes), seed)
        return SamplingResult(dict(counts), shots, seed)

    def run_shot(self, witness: PositiveRepWitness, circuit: Circuit, point: PauliPoint,
                 seed: int) -> SamplerState:
        """One shot of a measurement-only circuit from a fixed starting point."""
        if not circuit.is_measurement_only:
            raise ContractViolationError("run_shot needs a measurement-only circuit")
        rng = np.random.default_rng(seed)
        state = SamplerState(point, seed)
        d = circuit.d
        for step in circuit.steps:
            a = step.a
            pairing = (sum(p * q for p, q in zip(a.z, state.point.x))
                       - sum(p * q for p, q in zip(a.x, state.point.z)))
            state.outcome_log.append((witness.r_of(a) + pairing + step.outcome_shift) % d)
            state.point = state.point + a.scale(int(rng.integers(0, d)))
        return state

    # ------------------------------------------------------------------
    # Statistics
    # ------------------------------------------------------------------

    @staticmethod
    def total_variation(p: Mapping[str, float], q: Mapping[str, float]) -> float:
        keys = set(p) | set(q)
        return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)

    @staticmethod
    def chi_squared_test(result: SamplingResult, exact: Mapping[str, float]) -> float:
        """p-value of the observed counts against the exact distribution; bins below 5 are pooled."""
        keys = sorted(set(exact) | set(result.counts))
        observed = np.array([result.counts.get(k, 0) for k in keys], dtype=float)
        expected = np.array([exact.get(k, 0.0) for k in keys], dtype=float) * result.shots
        impossible = expected <= 0
        if observed[impossible].any():
            return 0.0
        observed, expected = observed[~impossible], expected[~impossible]
        small = expected < MIN_EXPECTED_COUNT
        if small.any():
            observed = np.append(observed[~small], observed[small].sum())
            expected = np.append(expected[~small], expected[small].sum())
        if observed.size < 2:
            return 1.0
        expected = expected * observed.sum() / expected.sum()
        return float(stats.chisquare(observed, expected).pvalue)
