"""Exact qudit Pauli/Clifford cohomology, Wigner functions and magic-state sampling."""

__version__ = "0.1.0"
