"""Exact linear algebra over the integers and Z_d."""

from .smith import (
    exgcd, smith_normal_form, diagonalize_mod, ModDiagonalForm, SolveOutcome,
    solve_system, mod_solve, mod_kernel, solve_via_integer_lift
)
from .smith_solver import SmithLinearSolver

__all__ = [
    # Normal forms
    'exgcd',
    'smith_normal_form',
    'diagonalize_mod',
    'ModDiagonalForm',

    # Solving
    'SolveOutcome',
    'solve_system',
    'mod_solve',
    'mod_kernel',
    'solve_via_integer_lift',
    'SmithLinearSolver',
]
