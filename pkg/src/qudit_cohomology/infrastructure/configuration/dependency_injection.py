"""Dependency injection configuration."""

import logging
from dataclasses import dataclass
from typing import Optional

from ...domain.interfaces import ICircuitLoader, IGaugeLoader, ILinearSystemSolver, IReportWriter, IStateLoader
from ..linalg import SmithLinearSolver
from ..storage.file import JsonCircuitLoader, JsonGaugeLoader, NdjsonReportWriter, StateLoader
from ...application.services import CliffordService, CohomologyService, SamplingService, WignerService
from .settings import AppSettings, get_settings

logger = logging.getLogger(__name__)


@dataclass
class ServiceContainer:
    """Every service a command handler may need."""
    settings: AppSettings
    solver: ILinearSystemSolver
    gauge_loader: IGaugeLoader
    circuit_loader: ICircuitLoader
    state_loader: IStateLoader
    report_writer: IReportWriter
    cohomology: CohomologyService
    clifford: CliffordService
    wigner: WignerService
    sampling: SamplingService


async def initialize_services(settings: Optional[AppSettings] = None,
                              report_path: Optional[str] = None) -> ServiceContainer:
    """Initialize all required services for the application."""
    # Load configuration
    config = settings if settings is not None else get_settings()

    solver = SmithLinearSolver()
    cohomology = CohomologyService(solver=solver, settings=config)
    clifford = CliffordService(solver=solver, settings=config)
    wigner = WignerService(cohomology=cohomology, settings=config)
    sampling = SamplingService(clifford=clifford, settings=config)

    gauge_loader = JsonGaugeLoader()
    circuit_loader = JsonCircuitLoader(
        gauge_loader=gauge_loader,
        clifford=clifford,
        max_dimension=config.max_dense_dimension
    )
    state_loader = StateLoader(max_dimension=config.max_dense_dimension, tolerance=config.matrix_tolerance)
    report_writer = NdjsonReportWriter(report_path)

    logger.debug("services initialized (max dense dimension %d)", config.max_dense_dimension)
    return ServiceContainer(
        settings=config,
        solver=solver,
        gauge_loader=gauge_loader,
        circuit_loader=circuit_loader,
        state_loader=state_loader,
        report_writer=report_writer,
        cohomology=cohomology,
        clifford=clifford,
        wigner=wigner,
        sampling=sampling,
    )
