"""Dense qudit gate matrices; qudit 0 is the most significant tensor factor."""

from typing import List

import numpy as np

from ...domain.exceptions import ContractViolationError, ResourceLimitError


def _omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def shift_unitary(d: int) -> np.ndarray:
    """X|k> = |k+1 mod d>."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_unitary(d: int) -> np.ndarray:
    """Z|k> = omega^k |k>."""
    return np.diag(_omega(d) ** np.arange(d))


def fourier_unitary(d: int) -> np.ndarray:
    """F = d^{-1/2} sum_{k,l} omega^{kl} |k><l|."""
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)


def phase_unitary(d: int) -> np.ndarray:
    """Quadratic phase P with P X P^dagger proportional to Z X.

    diag(omega^{2^{-1} k^2}) for odd d; diag(mu^{k^2}) with mu = exp(i pi / d) for even d.
    """
    k = np.arange(d)
    if d % 2:
        half = pow(2, -1, d)
        return np.diag(np.exp(2j * np.pi * ((half * k * k) % d) / d))
    return np.diag(np.exp(1j * np.pi * ((k * k) % (2 * d)) / d))


def quadratic_unitary(d: int, m: int = None) -> np.ndarray:
    """P_m F P_m F^dagger with P_m = diag(omega^{m k^2}); m defaults to d/4 for d = 0 mod 4."""
    if m is None:
        if d % 4:
            raise ContractViolationError(f"the default quadratic gate needs d = 0 mod 4, got {d}")
        m = d // 4
    k = np.arange(d)
    P = np.diag(np.exp(2j * np.pi * ((m * k * k) % d) / d))
    F = fourier_unitary(d)
    return P @ F @ P @ F.conj().T


def embed(single: np.ndarray, qudit: int, n: int) -> np.ndarray:
    """I x ... x single x ... x I with ``single`` acting on ``qudit``."""
    if not 0 <= qudit < n:
        raise ContractViolationError(f"qudit {qudit} out of range for n={n}")
    d = single.shape[0]
    factors: List[np.ndarray] = [np.eye(d, dtype=complex)] * n
    factors[qudit] = single
    out = np.array([[1.0 + 0j]])
    for factor in factors:
        out = np.kron(out, factor)
    return out


def sum_unitary(d: int, n: int, control: int, target: int) -> np.ndarray:
    """SUM|j, k> = |j, k + j>, target register shifted by the control value."""
    if control == target:
        raise ContractViolationError("SUM needs distinct control and target")
    dimension = d ** n
    digits = np.stack([(np.arange(dimension) // d ** (n - 1 - j)) % d for j in range(n)], axis=1)
    moved = digits.copy()
    moved[:, target] = (digits[:, target] + digits[:, control]) % d
    rows = moved @ (d ** np.arange(n - 1, -1, -1))
    matrix = np.zeros((dimension, dimension), dtype=complex)
    matrix[rows, np.arange(dimension)] = 1.0
    return matrix


def check_dimension(d: int, n: int, max_dimension: int) -> None:
    if d ** n > max_dimension:
        raise ResourceLimitError(
            f"dense gates of size {d ** n} exceed the limit {max_dimension}",
            "max_dense_dimension", d ** n, max_dimension,
        )
