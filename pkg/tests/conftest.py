"""Shared fixtures: one set of services per test session, wired like the CLI wires them."""

import asyncio

import numpy as np
import pytest

from src.qudit_cohomology.application.services import (
    CliffordService, CohomologyService, SamplingService, WignerService
)
from src.qudit_cohomology.domain.models import enumerate_points
from src.qudit_cohomology.infrastructure.configuration import AppSettings, initialize_services
from src.qudit_cohomology.infrastructure.linalg import SmithLinearSolver


@pytest.fixture(scope="session")
def settings():
    return AppSettings()


@pytest.fixture(scope="session")
def solver():
    return SmithLinearSolver()


@pytest.fixture(scope="session")
def cohomology(solver, settings):
    return CohomologyService(solver=solver, settings=settings)


@pytest.fixture(scope="session")
def clifford(solver, settings):
    return CliffordService(solver=solver, settings=settings)


@pytest.fixture(scope="session")
def wigner(cohomology, settings):
    return WignerService(cohomology=cohomology, settings=settings)


@pytest.fixture(scope="session")
def sampling(clifford, settings):
    return SamplingService(clifford=clifford, settings=settings)


@pytest.fixture(scope="session")
def services(settings):
    return asyncio.run(initialize_services(settings))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_shift(rng):
    """Draws nu: E -> Z_d with nu(0) = 0, for re-gauging by gauge_shift."""
    def draw(d, n):
        return {point: int(rng.integers(0, d)) for point in enumerate_points(d, n) if not point.is_zero()}

    return draw
