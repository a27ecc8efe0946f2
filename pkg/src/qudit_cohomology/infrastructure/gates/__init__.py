"""Dense Clifford gate library."""

from .unitaries import (
    shift_unitary, clock_unitary, fourier_unitary, phase_unitary,
    quadratic_unitary, embed, sum_unitary, check_dimension
)

__all__ = [
    'shift_unitary',
    'clock_unitary',
    'fourier_unitary',
    'phase_unitary',
    'quadratic_unitary',
    'embed',
    'sum_unitary',
    'check_dimension',
]
