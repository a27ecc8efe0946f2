"""Application commands package."""

from .check_beta import CheckBetaCommand, CheckBetaCommandHandler, encode_beta_decision, verify_beta_witness
from .check_phicov import CheckPhiCovCommand, CheckPhiCovCommandHandler
from .wigner_checks import WignerChecksCommand, WignerChecksCommandHandler, parse_checks, ALL_CHECKS
from .simulate_circuit import SimulateCircuitCommand, SimulateCircuitCommandHandler

__all__ = [
    # Cohomology commands
    'CheckBetaCommand',
    'CheckBetaCommandHandler',
    'encode_beta_decision',
    'verify_beta_witness',
    'CheckPhiCovCommand',
    'CheckPhiCovCommandHandler',

    # Wigner commands
    'WignerChecksCommand',
    'WignerChecksCommandHandler',
    'parse_checks',
    'ALL_CHECKS',

    # Simulation commands
    'SimulateCircuitCommand',
    'SimulateCircuitCommandHandler',
]
