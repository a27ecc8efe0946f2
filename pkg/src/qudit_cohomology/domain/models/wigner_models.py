"""Phase-point bases, Wigner functions and effect functions."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..exceptions import ContractViolationError
from .pauli_models import Gauge, PauliPoint, enumerate_points


@dataclass(frozen=True, eq=False)
class PhasePointBasis:
    """Coefficients c_b (indexed by label index) defining A_v = d^-n sum_b w^-[v,b] c_b T_b^dagger."""
    gauge: Gauge
    coefficients: np.ndarray
    offset: Optional[PauliPoint] = None
    name: str = ""

    def __post_init__(self):
        size = self.gauge.d ** (2 * self.gauge.n)
        coefficients = np.asarray(self.coefficients, dtype=complex)
        if coefficients.shape != (size,):
            raise ContractViolationError(
                f"basis needs {size} coefficients for d={self.gauge.d}, n={self.gauge.n}, got {coefficients.shape}"
            )
        coefficients = coefficients.copy()
        coefficients.setflags(write=False)
        object.__setattr__(self, 'coefficients', coefficients)

    @property
    def d(self) -> int:
        return self.gauge.d

    @property
    def n(self) -> int:
        return self.gauge.n

    @property
    def points(self) -> List[PauliPoint]:
        return list(enumerate_points(self.d, self.n))

    def coefficient(self, point: PauliPoint) -> complex:
        return complex(self.coefficients[point.index])

    @property
    def shift(self) -> PauliPoint:
        return self.offset if self.offset is not None else PauliPoint.zero(self.d, self.n)


@dataclass(frozen=True, eq=False)
class WignerFunction:
    """Expansion coefficients W(u) of an operator in the basis {A_u}."""
    basis: PhasePointBasis
    values: np.ndarray

    def __getitem__(self, point: PauliPoint) -> complex:
        return complex(self.values[point.index])

    def real_values(self, tolerance: float = 1e-10) -> np.ndarray:
        imaginary = float(np.max(np.abs(self.values.imag))) if self.values.size else 0.0
        if imaginary > tolerance:
            raise ContractViolationError(f"Wigner function has imaginary part {imaginary:.2e}")
        return self.values.real.copy()

    @property
    def total(self) -> complex:
        return complex(np.sum(self.values))


@dataclass(frozen=True, eq=False)
class ThetaEffect:
    """Effect function of the projector Pi_{a,s} on phase space."""
    a: PauliPoint
    s: int
    values: np.ndarray

    def __getitem__(self, point: PauliPoint) -> float:
        return float(self.values[point.index])


@dataclass(frozen=True, eq=False)
class PositiveRepWitness:
    """r_a with r_a + r_b - r_{a+b} = beta(a, b) on commuting pairs, relative to ``gauge``."""
    gauge: Gauge
    r: np.ndarray
    x: PauliPoint
    nu: Dict[PauliPoint, int] = field(default_factory=dict)

    def r_of(self, point: PauliPoint) -> int:
        return int(self.r[point.index])


@dataclass
class CovarianceCheck:
    """Result of testing g(A_v) = A_{S_g v + a_g} for all v."""
    gate_name: str
    translation: Optional[PauliPoint]
    max_residual: float
    failing_point: Optional[PauliPoint] = None

    @property
    def covariant(self) -> bool:
        return self.translation is not None


@dataclass
class BochnerReport:
    """Spectral data of the circulant M[y, x] = f(x - y)."""
    fourier: np.ndarray
    eigenvalues: np.ndarray
    max_eigen_residual: float
    nonnegative_transform: bool
    positive_semidefinite: bool


@dataclass
class NegativityReport:
    """Points where a Wigner function dips below zero."""
    points: List[Tuple[PauliPoint, float]]
    total_negativity: float

    @property
    def nonnegative(self) -> bool:
        return not self.points


@dataclass
class PositiveRepresentation:
    """Outcome of the positive-representation construction.

    ``basis`` and ``witness`` are set when beta is trivial; ``decision``
    always carries the verdict and, otherwise, the certificate cycle.
    """
    basis: Optional[PhasePointBasis]
    witness: Optional[PositiveRepWitness]
    decision: Any

    @property
    def found(self) -> bool:
        return self.basis is not None
