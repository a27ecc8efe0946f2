"""Algebra service interfaces."""

from abc import ABC, abstractmethod
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..models import (
    Chain, Circuit, ClassDecision, CliffordGate, Cochain, CompiledCircuit,
    Gauge, ModInt, Obstruction, PauliPoint, PauliTuple, PhasePointBasis, PositiveRepWitness,
    SamplingResult, ThetaEffect, WignerFunction, BochnerReport
)


class ICohomologyService(ABC):
    """Interface for the commutation-phase class beta."""

    @abstractmethod
    def beta_cochain(self, g: Gauge) -> Cochain:
        """Return beta as a degree-2 cochain on restricted tuples."""
        pass

    @abstractmethod
    def check_beta_cocycle(self, g: Gauge) -> bool:
        """Check delta beta = 0 on commuting triples."""
        pass

    @abstractmethod
    def decide_beta_trivial(self, g: Gauge) -> ClassDecision:
        """Decide whether beta is a coboundary on the commuting complex."""
        pass

    @abstractmethod
    def mermin_certificate(self, d: int, n: int, gauge: Optional[Gauge] = None) -> Tuple[Chain, ModInt]:
        """Return the Mermin cycle and beta evaluated on it."""
        pass


class ICliffordService(ABC):
    """Interface for Clifford actions and the covariance class."""

    @abstractmethod
    def extract_action(self, g: Gauge, unitary: np.ndarray, name: str = "U") -> CliffordGate:
        """Extract S_g and Phi_g from a dense Clifford unitary."""
        pass

    @abstractmethod
    def generator_set(self, d: int, n: int, gauge: Optional[Gauge] = None) -> Dict[str, CliffordGate]:
        """Return the standard Clifford generators keyed by name."""
        pass

    @abstractmethod
    def phi_cov_eval(self, gate: CliffordGate, face: PauliTuple) -> ModInt:
        """Evaluate Phi_g on the boundary of a face."""
        pass

    @abstractmethod
    def find_obstruction(self, g: Gauge, gates: Sequence[CliffordGate]) -> Optional[Obstruction]:
        """Return the first invariant face with non-zero phase in canonical order."""
        pass

    @abstractmethod
    def decide_phi_cov_trivial(self, g: Gauge, gates: Sequence[CliffordGate]) -> ClassDecision:
        """Decide whether the covariance class vanishes for the given gates."""
        pass


class IWignerService(ABC):
    """Interface for phase-point bases and quasiprobability representations."""

    @abstractmethod
    def phase_point_operator(self, basis: PhasePointBasis, v: PauliPoint) -> np.ndarray:
        """Return the dense operator A_v."""
        pass

    @abstractmethod
    def wigner_of(self, basis: PhasePointBasis, rho: np.ndarray) -> WignerFunction:
        """Expand an operator in the phase-point basis."""
        pass

    @abstractmethod
    def verify_covariance(self, basis: PhasePointBasis, gate: CliffordGate) -> Optional[PauliPoint]:
        """Return the translation a_g when the basis is covariant under the gate."""
        pass

    @abstractmethod
    def theta_effect(self, basis: PhasePointBasis, a: PauliPoint, s: int) -> ThetaEffect:
        """Return the effect function of the projector Pi_{a,s}."""
        pass

    @abstractmethod
    def construct_positive_rep(self, g: Gauge):
        """Build a positivity-preserving basis when beta is trivial."""
        pass

    @abstractmethod
    def bochner_check(self, f: np.ndarray) -> Tuple[BochnerReport, bool]:
        """Compare Fourier non-negativity with positive semidefiniteness."""
        pass


class ISamplingService(ABC):
    """Interface for compiling and simulating magic-state circuits."""

    @abstractmethod
    def compile_measurement_only(self, circuit: Circuit) -> CompiledCircuit:
        """Propagate Clifford gates into the measurements."""
        pass

    @abstractmethod
    def exact_distribution(self, circuit: Union[Circuit, CompiledCircuit],
                           rho: np.ndarray) -> Dict[str, float]:
        """Return the Born-rule outcome distribution."""
        pass

    @abstractmethod
    def simulate_sampling(self, basis: PhasePointBasis, witness: PositiveRepWitness,
                          circuit: Union[Circuit, CompiledCircuit], w_in: np.ndarray,
                          shots: int, seed: int) -> SamplingResult:
        """Sample outcomes from a non-negative input Wigner function."""
        pass
