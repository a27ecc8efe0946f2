"""File services interfaces."""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ..models import Circuit, Gauge, Report


class IGaugeLoader(ABC):
    """Interface for reading phase conventions from disk."""

    @abstractmethod
    def load_gauge(self, path: Optional[str], d: int, n: int) -> Gauge:
        """Load a gauge file, or return the standard gauge when path is None."""
        pass


class ICircuitLoader(ABC):
    """Interface for reading circuit descriptions."""

    @abstractmethod
    def load_circuit(self, path: str, gauge_path: Optional[str] = None) -> Circuit:
        """Load a circuit; gates are extracted against the circuit's gauge."""
        pass


class IStateLoader(ABC):
    """Interface for resolving input states."""

    @abstractmethod
    def load_state(self, source: str, d: int, n: int) -> np.ndarray:
        """Return a density matrix for a named state or a JSON file path."""
        pass


class IReportWriter(ABC):
    """Interface for emitting reports."""

    @abstractmethod
    def write(self, report: Report) -> None:
        """Write one report as a JSON line."""
        pass
