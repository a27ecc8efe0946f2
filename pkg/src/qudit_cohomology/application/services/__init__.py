"""Application services package."""

from .cohomology_service import CohomologyService
from .clifford_service import CliffordService
from .wigner_service import WignerService, PhaseSpaceFrame, pauli_stack
from .sampling_service import SamplingService, outcome_key

__all__ = [
    'CohomologyService',
    'CliffordService',
    'WignerService',
    'PhaseSpaceFrame',
    'pauli_stack',
    'SamplingService',
    'outcome_key',
]
