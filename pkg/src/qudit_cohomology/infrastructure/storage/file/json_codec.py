"""JSON encoding of labels, chains, cochains and certificates."""

from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ....domain.algebra import beta
from ....domain.exceptions import UsageError
from ....domain.models import (
    Chain, Gauge, Obstruction, PauliPoint, PauliTuple, PositiveRepWitness
)


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, labels and enums to plain JSON values."""
    if isinstance(value, PauliPoint):
        return list(value.vector)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    return value


def point_from_json(d: int, n: int, vector: Sequence[int]) -> PauliPoint:
    if not isinstance(vector, (list, tuple)) or len(vector) != 2 * n:
        raise UsageError(f"label {vector!r} must be a list of {2 * n} integers (z..., x...)")
    try:
        return PauliPoint.from_vector(d, [int(v) for v in vector])
    except (TypeError, ValueError) as e:
        raise UsageError(f"label {vector!r} is not a list of integers") from e


# ----------------------------------------------------------------------
# Chains and cochains
# ----------------------------------------------------------------------

def chain_to_json(chain: Chain, gauge: Optional[Gauge] = None) -> Dict[str, Any]:
    """Terms of a chain; with a gauge, each degree-2 face also carries beta(u, v)."""
    terms = []
    for cell, coefficient in chain.items():
        term: Dict[str, Any] = {"cell": [list(p.vector) for p in cell.entries], "coefficient": coefficient}
        if gauge is not None and cell.degree == 2:
            term["beta"] = int(beta(gauge, *cell.entries))
        terms.append(term)
    return {"d": chain.d, "degree": chain.degree, "restricted": chain.restricted, "terms": terms}


def chain_from_json(data: Mapping[str, Any], n: int) -> Chain:
    try:
        d, degree = int(data["d"]), int(data["degree"])
        restricted = bool(data.get("restricted", True))
        terms = [
            (PauliTuple(tuple(point_from_json(d, n, v) for v in term["cell"]), restricted),
             int(term["coefficient"]))
            for term in data["terms"]
        ]
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed chain document: {e}") from e
    return Chain.from_terms(d, degree, terms, restricted)


def cochain_to_json(values: Mapping[PauliPoint, int]) -> List[Dict[str, Any]]:
    """Non-zero values of a degree-1 cochain, in label order."""
    return [{"a": list(point.vector), "value": int(value)}
            for point, value in sorted(values.items()) if int(value)]


def cochain_from_json(entries: Sequence[Mapping[str, Any]], d: int, n: int) -> Dict[PauliPoint, int]:
    try:
        return {point_from_json(d, n, entry["a"]): int(entry["value"]) % d for entry in entries}
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed cochain document: {e}") from e


# ----------------------------------------------------------------------
# Certificates
# ----------------------------------------------------------------------

def certificate_to_json(cycle: Chain, gauge: Gauge, total: int) -> Dict[str, Any]:
    """Faces with per-face beta values plus the total beta(F)."""
    document = chain_to_json(cycle, gauge)
    document["total"] = int(total)
    return document


def certificate_from_json(data: Mapping[str, Any], n: int) -> Tuple[Chain, int]:
    if "total" not in data:
        raise UsageError("certificate document has no 'total'")
    return chain_from_json(data, n), int(data["total"])


def obstruction_to_json(obstruction: Obstruction) -> Dict[str, Any]:
    return {
        "gate": obstruction.gate.name,
        "u": list(obstruction.u.vector),
        "v": list(obstruction.v.vector),
        "edge_phases": [int(p) for p in obstruction.edge_phases],
        "value": int(obstruction.value),
    }


def obstruction_from_json(data: Mapping[str, Any], d: int, n: int) -> Tuple[str, PauliTuple, int]:
    """(gate name, face [u|v], claimed value)."""
    try:
        u, v = point_from_json(d, n, data["u"]), point_from_json(d, n, data["v"])
        face = PauliTuple((u, v), restricted=False)
        return str(data["gate"]), face, int(data["value"])
    except KeyError as e:
        raise UsageError(f"obstruction document lacks {e}") from e


def witness_to_json(witness: PositiveRepWitness) -> Dict[str, Any]:
    return {
        "x": list(witness.x.vector),
        "nu": cochain_to_json(witness.nu),
        "r": [int(v) for v in witness.r],
    }


def gauge_to_json(gauge: Gauge) -> List[Dict[str, Any]]:
    """Gauge file entries for the explicitly set labels."""
    return [{"a": list(vector), "gamma": int(value)} for vector, value in gauge.overrides]


def gauge_from_json(entries: Any, d: int, n: int, name: str = "file") -> Gauge:
    if not isinstance(entries, list):
        raise UsageError("gauge file must hold a JSON list of {a, gamma} entries")
    overrides = []
    for entry in entries:
        try:
            point = point_from_json(d, n, entry["a"])
            overrides.append((point.vector, int(entry["gamma"])))
        except (KeyError, TypeError) as e:
            raise UsageError(f"malformed gauge entry {entry!r}") from e
    return Gauge(d, n, "standard", tuple(overrides), name)


def matrix_from_json(data: Any) -> np.ndarray:
    """A complex matrix from {real, imag} or from a plain nested list."""
    try:
        if isinstance(data, Mapping):
            real = np.asarray(data["real"], dtype=float)
            imag = np.asarray(data.get("imag", np.zeros_like(real)), dtype=float)
            return real + 1j * imag
        return np.asarray(data, dtype=complex)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed matrix document: {e}") from e
