"""Pure algebra of the Pauli group and the tuple complexes."""

from .pauli import (
    symplectic_form, symplectic_value, standard_gauge, gauge_shift, pauli_op,
    pauli_matrix, basis_digits, beta, phi_power, pauli_projector,
    label_table, label_indices, symplectic_rows, symplectic_table, gamma_table, beta_values
)
from .chains import boundary, evaluate, coboundary_eval

__all__ = [
    # Pauli algebra
    'symplectic_form',
    'symplectic_value',
    'standard_gauge',
    'gauge_shift',
    'pauli_op',
    'pauli_matrix',
    'basis_digits',
    'beta',
    'phi_power',
    'pauli_projector',

    # Vectorized label tables
    'label_table',
    'label_indices',
    'symplectic_rows',
    'symplectic_table',
    'gamma_table',
    'beta_values',

    # Chain complexes
    'boundary',
    'evaluate',
    'coboundary_eval',
]
