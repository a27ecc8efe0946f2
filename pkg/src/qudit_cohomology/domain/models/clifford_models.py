"""Clifford gate records and covariance obstructions."""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from ..exceptions import PhaseConsistencyError
from .chain_models import Cochain, PauliTuple
from .modular_models import ModMatrix
from .pauli_models import Gauge, PauliOp, PauliPoint


@dataclass(frozen=True, eq=False)
class CliffordGate:
    """A verified Clifford unitary with its symplectic part S_g and phase cochain.

    ``z_images[j]`` and ``x_images[j]`` hold g Z_j g^dagger and g X_j g^dagger as
    exact Pauli operators; every other conjugate follows by Pauli products.
    """
    name: str
    unitary: np.ndarray
    gauge: Gauge
    symplectic: ModMatrix
    z_images: Tuple[PauliOp, ...]
    x_images: Tuple[PauliOp, ...]
    _cache: Dict[PauliPoint, Tuple[int, PauliPoint]] = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.gauge.d

    @property
    def n(self) -> int:
        return self.gauge.n

    def map_point(self, point: PauliPoint) -> PauliPoint:
        """S_g a."""
        return self.conjugate(point)[1]

    def image(self, op: PauliOp) -> PauliOp:
        """g (mu^p Z(z) X(x)) g^dagger as an exact Pauli operator."""
        result = PauliOp(op.phase_exp, PauliPoint.zero(self.d, self.n))
        for j, power in enumerate(op.point.z):
            result = result * self.z_images[j].power(power)
        for j, power in enumerate(op.point.x):
            result = result * self.x_images[j].power(power)
        return result

    def conjugate(self, point: PauliPoint) -> Tuple[int, PauliPoint]:
        """Return (Phi_g(a), S_g a) with g T_a g^dagger = omega^Phi T_{S_g a}."""
        hit = self._cache.get(point)
        if hit is not None:
            return hit
        image = self.image(PauliOp(self.gauge.gamma(point), point))
        offset = image.phase_exp - self.gauge.gamma(image.point)
        if offset % image.scale:
            raise PhaseConsistencyError(
                f"gate '{self.name}': conjugate of T{point} is not an omega-multiple of T{image.point}"
            )
        result = ((offset // image.scale) % self.d, image.point)
        self._cache[point] = result
        return result

    def phase(self, point: PauliPoint) -> int:
        return self.conjugate(point)[0]

    @property
    def phase_cochain(self) -> Cochain:
        return Cochain(self.d, 1, lambda cell: self.phase(cell.entries[0]), f"Phi[{self.name}]")


@dataclass(frozen=True)
class Obstruction:
    """A face f with g(boundary f) = boundary f and Phi_g(boundary f) != 0."""
    gate: CliffordGate = field(compare=False)
    face: PauliTuple
    value: int
    edge_phases: Tuple[int, int, int] = (0, 0, 0)

    @property
    def u(self) -> PauliPoint:
        return self.face.entries[0]

    @property
    def v(self) -> PauliPoint:
        return self.face.entries[1]
