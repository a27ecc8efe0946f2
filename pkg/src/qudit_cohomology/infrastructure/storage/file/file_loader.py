"""Loaders for gauge files, circuit files and input states."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ....domain.algebra import standard_gauge
from ....domain.exceptions import ContractViolationError, UsageError
from ....domain.interfaces import ICircuitLoader, ICliffordService, IGaugeLoader, IStateLoader
from ....domain.models import Circuit, CliffordGate, Condition, Gauge, GateStep, MeasureStep, Step
from ...gates import check_dimension, embed, fourier_unitary, quadratic_unitary
from .json_codec import gauge_from_json, matrix_from_json, point_from_json

logger = logging.getLogger(__name__)


def read_json(path: str, what: str) -> Any:
    file_path = Path(path)
    if not file_path.is_file():
        raise UsageError(f"{what} file not found: {path}")
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise UsageError(f"{what} file {path} is not valid JSON: {e}") from e


class JsonGaugeLoader(IGaugeLoader):
    """Reads a JSON list of {a, gamma}; unlisted labels keep the standard value."""

    def load_gauge(self, path: Optional[str], d: int, n: int) -> Gauge:
        if path is None:
            return standard_gauge(d, n)
        entries = read_json(path, "gauge")
        gauge = gauge_from_json(entries, d, n, Path(path).stem)
        logger.debug("loaded gauge '%s' with %d explicit values", gauge.name, len(gauge.overrides))
        return gauge


class JsonCircuitLoader(ICircuitLoader):
    """Reads {d, n, steps: [{type: gate, name|matrix, cond?}, {type: measure, a, reg}]}."""

    LEMMA_GATES = ("FOURIER", "QUAD")

    def __init__(self, gauge_loader: IGaugeLoader, clifford: ICliffordService, max_dimension: int = 4096):
        self._gauges = gauge_loader
        self._clifford = clifford
        self._max_dimension = max_dimension

    def load_circuit(self, path: str, gauge_path: Optional[str] = None) -> Circuit:
        data = read_json(path, "circuit")
        if not isinstance(data, dict):
            raise UsageError(f"circuit file {path} must hold a JSON object")
        try:
            d, n = int(data["d"]), int(data["n"])
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"circuit file {path} needs integer 'd' and 'n'") from e
        check_dimension(d, n, self._max_dimension)
        gauge = self._gauges.load_gauge(gauge_path, d, n)
        generators = self._clifford.generator_set(d, n, gauge)

        steps: List[Step] = []
        for position, entry in enumerate(data.get("steps", [])):
            kind = entry.get("type") if isinstance(entry, dict) else None
            if kind == "gate":
                steps.append(GateStep(self._gate(entry, gauge, generators, position),
                                      self._condition(entry.get("cond"), position)))
            elif kind == "measure":
                if "a" not in entry or "reg" not in entry:
                    raise UsageError(f"step {position}: a measurement needs 'a' and 'reg'")
                steps.append(MeasureStep(point_from_json(d, n, entry["a"]), int(entry["reg"])))
            else:
                raise UsageError(f"step {position}: unknown step type {kind!r}")
        try:
            circuit = Circuit(d, n, gauge, tuple(steps))
        except ContractViolationError as e:
            raise UsageError(f"circuit file {path}: {e}") from e
        logger.info("loaded circuit %s: %d steps, %d measurements",
                    path, len(circuit.steps), len(circuit.measurements))
        return circuit

    def _gate(self, entry: Dict[str, Any], gauge: Gauge, generators: Dict[str, CliffordGate],
              position: int) -> CliffordGate:
        d, n = gauge.d, gauge.n
        if "matrix" in entry:
            unitary = matrix_from_json(entry["matrix"])
            if unitary.shape != (d ** n, d ** n):
                raise UsageError(f"step {position}: matrix has shape {unitary.shape}, expected {d ** n}x{d ** n}")
            return self._clifford.extract_action(gauge, unitary, entry.get("name", f"U{position}"))
        name = entry.get("name")
        if name in generators:
            return generators[name]
        if name == "FOURIER":
            return self._clifford.extract_action(gauge, embed(fourier_unitary(d), 0, n), name)
        if name == "QUAD":
            return self._clifford.extract_action(gauge, embed(quadratic_unitary(d), 0, n), name)
        known = ", ".join(list(generators) + list(self.LEMMA_GATES))
        raise UsageError(f"step {position}: unknown gate {name!r}; known gates: {known}")

    @staticmethod
    def _condition(cond: Optional[Dict[str, Any]], position: int) -> Optional[Condition]:
        if cond is None:
            return None
        try:
            return Condition(int(cond["reg"]), int(cond["value"]))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"step {position}: condition must be {{reg, value}}") from e


class StateLoader(IStateLoader):
    """Named states (zero, mixed, plus) or a JSON density matrix {real, imag}."""

    def __init__(self, max_dimension: int = 4096, tolerance: float = 1e-10):
        self._max_dimension = max_dimension
        self._tolerance = tolerance

    def load_state(self, source: str, d: int, n: int) -> np.ndarray:
        check_dimension(d, n, self._max_dimension)
        dimension = d ** n
        if source == "zero":
            rho = np.zeros((dimension, dimension), dtype=complex)
            rho[0, 0] = 1.0
            return rho
        if source == "mixed":
            return np.eye(dimension, dtype=complex) / dimension
        if source == "plus":
            return np.full((dimension, dimension), 1.0 / dimension, dtype=complex)
        rho = matrix_from_json(read_json(source, "state"))
        self._validate(rho, dimension, source)
        return rho

    def _validate(self, rho: np.ndarray, dimension: int, source: str) -> None:
        if rho.shape != (dimension, dimension):
            raise UsageError(f"state {source} has shape {rho.shape}, expected {dimension}x{dimension}")
        if np.max(np.abs(rho - rho.conj().T)) > self._tolerance:
            raise ContractViolationError(f"state {source} is not Hermitian")
        if abs(np.trace(rho) - 1) > self._tolerance:
            raise ContractViolationError(f"state {source} has trace {np.trace(rho).real:.6f}, expected 1")
        lowest = float(np.min(np.linalg.eigvalsh(rho)))
        if lowest < -self._tolerance:
            raise ContractViolationError(f"state {source} has negative eigenvalue {lowest:.3e}")
