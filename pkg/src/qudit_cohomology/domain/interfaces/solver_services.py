"""Linear algebra service interfaces."""

from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

from ..models import ModInt, ModMatrix


class ILinearSystemSolver(ABC):
    """Interface for solving linear systems over Z_d."""

    @abstractmethod
    def solve(self, A: ModMatrix, b: Sequence[int]) -> Optional[List[ModInt]]:
        """Return one solution of A x = b, or None when the system is inconsistent."""
        pass

    @abstractmethod
    def solve_with_certificate(self, A: ModMatrix, b: Sequence[int]):
        """Return a SolveOutcome carrying either a solution or a left certificate y."""
        pass

    @abstractmethod
    def kernel(self, A: ModMatrix) -> List[List[ModInt]]:
        """Return generators of the kernel of A."""
        pass
