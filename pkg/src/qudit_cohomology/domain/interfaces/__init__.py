"""Domain interfaces package."""

from .solver_services import ILinearSystemSolver
from .file_services import IGaugeLoader, ICircuitLoader, IStateLoader, IReportWriter
from .algebra_services import ICohomologyService, ICliffordService, IWignerService, ISamplingService

__all__ = [
    # Solver services
    'ILinearSystemSolver',

    # File services
    'IGaugeLoader',
    'ICircuitLoader',
    'IStateLoader',
    'IReportWriter',

    # Algebra services
    'ICohomologyService',
    'ICliffordService',
    'IWignerService',
    'ISamplingService',
]
