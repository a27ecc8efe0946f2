"""Smith-form backed implementation of the Z_d linear solver."""

import logging
from typing import List, Optional, Sequence

from ...domain.interfaces import ILinearSystemSolver
from ...domain.models import ModInt, ModMatrix
from .smith import SolveOutcome, mod_kernel, mod_solve, solve_system

logger = logging.getLogger(__name__)


class SmithLinearSolver(ILinearSystemSolver):
    """Solves A x = b over Z_d through modular diagonalization."""

    def solve(self, A: ModMatrix, b: Sequence[int]) -> Optional[List[ModInt]]:
        logger.debug("solving %dx%d system mod %d", A.rows, A.cols, A.modulus)
        return mod_solve(A, b)

    def solve_with_certificate(self, A: ModMatrix, b: Sequence[int]) -> SolveOutcome:
        logger.debug("solving %dx%d system mod %d with certificate", A.rows, A.cols, A.modulus)
        outcome = solve_system(A, b, with_certificate=True)
        if not outcome.consistent:
            logger.info("system mod %d is inconsistent; certificate found", A.modulus)
        return outcome

    def kernel(self, A: ModMatrix) -> List[List[ModInt]]:
        return mod_kernel(A)
