"""Pauli multiplication table over Z_d: symplectic form, gauges, beta and phi."""

from typing import Mapping, Optional

import numpy as np

from ..exceptions import ContractViolationError, InternalConsistencyError, ResourceLimitError
from ..models import Gauge, ModInt, PauliOp, PauliPoint

DEFAULT_MAX_DIMENSION = 4096


def _same_space(a: PauliPoint, b: PauliPoint) -> None:
    if a.d != b.d or a.n != b.n:
        raise ContractViolationError(
            f"labels {a} and {b} live in different spaces (d={a.d}, n={a.n}) vs (d={b.d}, n={b.n})"
        )


def _in_gauge(g: Gauge, a: PauliPoint) -> None:
    if a.d != g.d or a.n != g.n:
        raise ContractViolationError(f"label {a} does not match gauge (d={g.d}, n={g.n})")


def symplectic_value(a: PauliPoint, b: PauliPoint) -> int:
    """[a, b] = a_Z.b_X - a_X.b_Z as a plain residue."""
    form = sum(p * q for p, q in zip(a.z, b.x)) - sum(p * q for p, q in zip(a.x, b.z))
    return form % a.d


def symplectic_form(a: PauliPoint, b: PauliPoint) -> ModInt:
    _same_space(a, b)
    return ModInt(symplectic_value(a, b), a.d)


def standard_gauge(d: int, n: int) -> Gauge:
    """Gross convention -2^{-1} a_Z.a_X for odd d, a_Z.a_X over Z_2d for even d."""
    if d < 2:
        raise ContractViolationError(f"local dimension must be at least 2, got {d}")
    if n < 1:
        raise ContractViolationError(f"qudit count must be at least 1, got {n}")
    return Gauge(d, n, "standard", (), "standard")


def gauge_shift(g: Gauge, nu: Mapping[PauliPoint, int], name: Optional[str] = None) -> Gauge:
    """gamma -> gamma + scale * nu."""
    values = {}
    for point, shift in nu.items():
        _in_gauge(g, point)
        if point.is_zero() and int(shift) % g.d:
            raise ContractViolationError("gauge shifts must vanish on the zero label")
        if int(shift) % g.d:
            values[point] = g.gamma(point) + g.scale * int(shift)
    return g.with_values(values, name or f"{g.name}+shift")


def pauli_op(g: Gauge, a: PauliPoint) -> PauliOp:
    """T_a = mu^gamma(a) Z(a_Z) X(a_X)."""
    _in_gauge(g, a)
    return PauliOp(g.gamma(a), a)


def basis_digits(d: int, n: int) -> np.ndarray:
    """Digits of every computational basis index, qudit 0 most significant."""
    indices = np.arange(d ** n)
    return np.stack([(indices // d ** (n - 1 - j)) % d for j in range(n)], axis=1)


def pauli_matrix(g: Gauge, op: PauliOp, max_dimension: int = DEFAULT_MAX_DIMENSION) -> np.ndarray:
    """Dense mu^phase Z(a_Z) X(a_X); X|k> = |k+1>, Z|k> = omega^k |k>."""
    d, n = g.d, g.n
    _in_gauge(g, op.point)
    dimension = d ** n
    if dimension > max_dimension:
        raise ResourceLimitError(
            f"dense Pauli matrix of size {dimension} exceeds the limit {max_dimension}",
            "max_dense_dimension", dimension, max_dimension,
        )
    digits = basis_digits(d, n)
    shifted = (digits + np.array(op.point.x)) % d
    rows = shifted @ (d ** np.arange(n - 1, -1, -1))
    clock = (shifted @ np.array(op.point.z)) % d
    exponent = (op.phase_exp + g.scale * clock) % g.modulus
    matrix = np.zeros((dimension, dimension), dtype=complex)
    matrix[rows, np.arange(dimension)] = np.exp(2j * np.pi * exponent / g.modulus)
    return matrix


def beta(g: Gauge, a: PauliPoint, b: PauliPoint) -> ModInt:
    """Exponent with T_a T_b = omega^beta T_{a+b} for commuting labels."""
    _in_gauge(g, a)
    _in_gauge(g, b)
    if symplectic_value(a, b):
        raise ContractViolationError(f"beta is defined on commuting labels only; [{a}, {b}] != 0")
    product = pauli_op(g, a) * pauli_op(g, b)
    offset = (product.phase_exp - g.gamma(a + b)) % g.modulus
    if offset % g.scale:
        raise InternalConsistencyError(
            f"odd phase numerator {offset} for commuting pair {a}, {b}; the gauge breaks the parity constraint"
        )
    return ModInt(offset // g.scale, g.d)


def phi_power(g: Gauge, b: PauliPoint, k) -> ModInt:
    """phi_b(k) with (T_b)^k = omega^phi T_{kb}."""
    _in_gauge(g, b)
    k = int(k) % g.d
    power = pauli_op(g, b).power(k)
    offset = (power.phase_exp - g.gamma(b.scale(k))) % g.modulus
    if offset % g.scale:
        raise InternalConsistencyError(f"power {k} of T{b} is not an omega-multiple of T{b.scale(k)}")
    return ModInt(offset // g.scale, g.d)


def pauli_projector(g: Gauge, a: PauliPoint, s, max_dimension: int = DEFAULT_MAX_DIMENSION) -> np.ndarray:
    """Pi_{a,s} = (1/d) sum_k omega^{-sk} (T_a)^k, the eigenprojector of T_a for omega^s."""
    d = g.d
    s = int(s) % d
    base = pauli_op(g, a)
    dimension = d ** g.n
    projector = np.zeros((dimension, dimension), dtype=complex)
    for k in range(d):
        projector += np.exp(-2j * np.pi * s * k / d) * pauli_matrix(g, base.power(k), max_dimension)
    return projector / d


def label_table(d: int, n: int) -> np.ndarray:
    """Flat vectors (z..., x...) of every label, row i holding the label of index i."""
    indices = np.arange(d ** (2 * n), dtype=np.int64)
    return np.stack([(indices // d ** (2 * n - 1 - j)) % d for j in range(2 * n)], axis=1)


def label_indices(vectors: np.ndarray, d: int) -> np.ndarray:
    """Index of each row of ``vectors`` (reduced mod d) in enumeration order."""
    vectors = np.mod(np.asarray(vectors, dtype=np.int64), d)
    width = vectors.shape[-1]
    return vectors @ (d ** np.arange(width - 1, -1, -1, dtype=np.int64))


def symplectic_rows(table: np.ndarray, rows: np.ndarray, d: int) -> np.ndarray:
    """[a, b] for a in ``table[rows]`` against every label b in ``table``."""
    n = table.shape[1] // 2
    left = table[rows]
    form = left[:, :n] @ table[:, n:].T - left[:, n:] @ table[:, :n].T
    return np.mod(form, d)


def symplectic_table(d: int, n: int) -> np.ndarray:
    """Full matrix of symplectic values indexed by label index."""
    table = label_table(d, n)
    return symplectic_rows(table, np.arange(table.shape[0]), d)


def gamma_table(g: Gauge) -> np.ndarray:
    """gamma of every label, indexed by label index."""
    d, n = g.d, g.n
    table = label_table(d, n)
    if g.rule == "zero":
        values = np.zeros(table.shape[0], dtype=np.int64)
    else:
        dot = (table[:, :n] * table[:, n:]).sum(axis=1)
        if d % 2:
            values = (-pow(2, -1, d) * dot) % d
        else:
            values = dot % (2 * d)
    if g.overrides:
        vectors = np.array([vector for vector, _ in g.overrides], dtype=np.int64)
        values[label_indices(vectors, d)] = [value for _, value in g.overrides]
    return values


def beta_values(g: Gauge, left: np.ndarray, right: np.ndarray,
                gammas: Optional[np.ndarray] = None) -> np.ndarray:
    """beta over index arrays of labels; the caller guarantees the pairs commute."""
    d, n = g.d, g.n
    table = label_table(d, n)
    gammas = gamma_table(g) if gammas is None else gammas
    sums = label_indices(table[left] + table[right], d)
    cross = (table[left][:, n:] * table[right][:, :n]).sum(axis=1)
    numerator = (gammas[left] + gammas[right] - gammas[sums] - g.scale * cross) % g.modulus
    if (numerator % g.scale).any():
        raise InternalConsistencyError("odd phase numerator on a commuting pair; the gauge breaks the parity constraint")
    return (numerator // g.scale) % d
