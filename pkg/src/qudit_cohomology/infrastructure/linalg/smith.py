"""Smith normal form over the integers and linear systems over Z_d."""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ...domain.exceptions import ContractViolationError, InternalConsistencyError
from ...domain.models import ModInt, ModMatrix

logger = logging.getLogger(__name__)


def _extended_euclid(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def exgcd(a: int, b: int) -> np.ndarray:
    """2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0].

    If a divides b, M[0, 1] is 0.
    """
    a, b = int(a), int(b)
    if a != 0 and b % a == 0:
        g, s, t = abs(a), (1 if a > 0 else -1), 0
    else:
        g, s, t = _extended_euclid(a, b)
    if g == 0:
        return np.array([[1, 0], [0, 1]], dtype=object)
    return np.array([[s, t], [-b // g, a // g]], dtype=object)


def smith_normal_form(matrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (U, D, V) with U @ A @ V == D, U and V unimodular, D a divisibility chain."""
    A = np.array(matrix, dtype=object)
    if A.ndim != 2:
        raise ContractViolationError(f"smith_normal_form needs a 2-d matrix, got shape {A.shape}")
    D = A.copy()
    rows, cols = D.shape
    U = np.eye(rows, dtype=int).astype(object)
    V = np.eye(cols, dtype=int).astype(object)

    def clear_col(i: int) -> bool:
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, rows):
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            U[[i, j]] = M @ U[[i, j]]
        return True

    def clear_row(i: int) -> bool:
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, cols):
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            V[:, [i, j]] = V[:, [i, j]] @ M
        return True

    size = min(rows, cols)
    for i in range(size):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    # divisibility chain: diag(a, b) -> diag(gcd, lcm) by unimodular moves
    changed = True
    while changed:
        changed = False
        for i in range(size):
            for j in range(i + 1, size):
                a, b = D[i, i], D[j, j]
                if b == 0 or (a != 0 and b % a == 0):
                    continue
                D[:, i] += D[:, j]
                V[:, i] += V[:, j]
                M = exgcd(D[i, i], D[j, i])
                D[[i, j]] = M @ D[[i, j]]
                U[[i, j]] = M @ U[[i, j]]
                M = exgcd(D[i, i], D[i, j]).T
                D[:, [i, j]] = D[:, [i, j]] @ M
                V[:, [i, j]] = V[:, [i, j]] @ M
                changed = True

    for i in range(size):
        if D[i, i] < 0:
            D[i] = -D[i]
            U[i] = -U[i]

    if not (U.dot(A).dot(V) == D).all():
        raise InternalConsistencyError("Smith form factors do not reproduce the diagonal")
    return U, D, V


@dataclass
class ModDiagonalForm:
    """U @ A @ V == diag(diagonal) (mod modulus) with U, V invertible over Z_modulus."""
    modulus: int
    diagonal: List[int]
    shape: Tuple[int, int]
    left: Optional[np.ndarray] = None
    right: Optional[np.ndarray] = None
    rhs: Optional[np.ndarray] = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _multipliers(pivot: int, values: np.ndarray, modulus: int) -> np.ndarray:
    """c with c * pivot == values (mod modulus); values must lie in the ideal of pivot."""
    g = gcd(pivot, modulus)
    reduced = modulus // g
    inverse = pow(pivot // g, -1, reduced)
    return ((values // g) * inverse) % reduced


def diagonalize_mod(matrix, modulus: int, rhs=None,
                    track_left: bool = False, track_right: bool = False) -> ModDiagonalForm:
    """Diagonalize over Z_modulus by invertible row and column operations.

    This is the Smith reduction of the integer lift [A | modulus*I] carried out
    inside the ring: the modulus block only ever contributes reductions mod d.
    Pivots are chosen with the smallest gcd against the modulus so most
    eliminations are a single vectorized pass; the rest fall back to 2x2
    Euclid moves.
    """
    d = int(modulus)
    D = np.mod(np.array(matrix, dtype=np.int64), d)
    if D.ndim != 2:
        raise ContractViolationError(f"expected a 2-d matrix, got shape {D.shape}")
    rows, cols = D.shape
    U = np.eye(rows, dtype=np.int64) if track_left else None
    V = np.eye(cols, dtype=np.int64) if track_right else None
    R = None
    if rhs is not None:
        R = np.mod(np.array(rhs, dtype=np.int64), d)
        R = R.reshape(rows, 1) if R.ndim == 1 else R

    def row_move(t: int, j: int, M: np.ndarray) -> None:
        M = M.astype(np.int64)
        D[[t, j]] = (M @ D[[t, j]]) % d
        if U is not None:
            U[[t, j]] = (M @ U[[t, j]]) % d
        if R is not None:
            R[[t, j]] = (M @ R[[t, j]]) % d

    def col_move(t: int, j: int, M: np.ndarray) -> None:
        M = M.astype(np.int64)
        D[:, [t, j]] = (D[:, [t, j]] @ M) % d
        if V is not None:
            V[:, [t, j]] = (V[:, [t, j]] @ M) % d

    def clear_column(t: int) -> None:
        while True:
            g = gcd(int(D[t, t]), d)
            stubborn = np.nonzero(D[t + 1:, t] % g)[0]
            if stubborn.size == 0:
                break
            j = t + 1 + int(stubborn[0])
            row_move(t, j, exgcd(int(D[t, t]), int(D[j, t])))
        below = D[t + 1:, t]
        if not below.any():
            return
        c = _multipliers(int(D[t, t]), below, d)
        D[t + 1:] = (D[t + 1:] - np.outer(c, D[t])) % d
        if U is not None:
            U[t + 1:] = (U[t + 1:] - np.outer(c, U[t])) % d
        if R is not None:
            R[t + 1:] = (R[t + 1:] - np.outer(c, R[t])) % d

    def clear_row(t: int) -> None:
        while True:
            g = gcd(int(D[t, t]), d)
            stubborn = np.nonzero(D[t, t + 1:] % g)[0]
            if stubborn.size == 0:
                break
            j = t + 1 + int(stubborn[0])
            col_move(t, j, exgcd(int(D[t, t]), int(D[t, j])).T)
        right = D[t, t + 1:]
        if not right.any():
            return
        c = _multipliers(int(D[t, t]), right, d)
        D[:, t + 1:] = (D[:, t + 1:] - np.outer(D[:, t], c)) % d
        if V is not None:
            V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], c)) % d

    diagonal: List[int] = []
    for t in range(min(rows, cols)):
        block = D[t:, t:]
        nz_rows, nz_cols = np.nonzero(block)
        if nz_rows.size == 0:
            break
        strength = np.gcd(block[nz_rows, nz_cols], d)
        best = int(np.argmin(strength))
        i, j = int(nz_rows[best]) + t, int(nz_cols[best]) + t
        if i != t:
            D[[t, i]] = D[[i, t]]
            if U is not None:
                U[[t, i]] = U[[i, t]]
            if R is not None:
                R[[t, i]] = R[[i, t]]
        if j != t:
            D[:, [t, j]] = D[:, [j, t]]
            if V is not None:
                V[:, [t, j]] = V[:, [j, t]]
        while True:
            clear_column(t)
            clear_row(t)
            if not D[t + 1:, t].any():
                break
        diagonal.append(int(D[t, t]))

    logger.debug("diagonalized %dx%d system mod %d, rank %d", rows, cols, d, len(diagonal))
    return ModDiagonalForm(d, diagonal, (rows, cols), U, V, R)


@dataclass
class SolveOutcome:
    """Canonical solution, or a left certificate y with y A == 0 and y b != 0."""
    solution: Optional[List[int]]
    certificate: Optional[List[int]] = None

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def _check_system(A: ModMatrix, b: Sequence) -> np.ndarray:
    vector = np.array([int(v) for v in b], dtype=np.int64)
    if vector.shape != (A.rows,):
        raise ContractViolationError(
            f"right-hand side of length {vector.shape[0]} does not match {A.rows}x{A.cols} system"
        )
    for value in b:
        if isinstance(value, ModInt) and value.modulus != A.modulus:
            raise ContractViolationError("right-hand side modulus differs from the matrix modulus")
    return vector


def solve_system(A: ModMatrix, b: Sequence, with_certificate: bool = False) -> SolveOutcome:
    d = A.modulus
    vector = _check_system(A, b)
    form = diagonalize_mod(A.entries, d, rhs=vector, track_left=with_certificate, track_right=True)
    reduced = form.rhs[:, 0]
    y = np.zeros(A.cols, dtype=np.int64)
    broken: Optional[Tuple[int, int]] = None
    for i, pivot in enumerate(form.diagonal):
        g = gcd(pivot, d)
        if reduced[i] % g:
            broken = (i, d // g)
            break
        y[i] = _multipliers(pivot, np.array([reduced[i]]), d)[0]
    if broken is None:
        leftover = np.nonzero(reduced[form.rank:])[0]
        if leftover.size:
            broken = (form.rank + int(leftover[0]), 1)
    if broken is None:
        x = (form.right @ y) % d
        return SolveOutcome([int(v) for v in x])
    if not with_certificate:
        return SolveOutcome(None)
    row, factor = broken
    certificate = (factor * form.left[row]) % d
    if ((certificate @ A.entries) % d).any() or int(certificate @ vector) % d == 0:
        raise InternalConsistencyError("left certificate does not expose the inconsistency")
    return SolveOutcome(None, [int(v) for v in certificate])


def mod_solve(A: ModMatrix, b: Sequence) -> Optional[List[ModInt]]:
    """Canonical x with A x == b (mod d), free variables set to 0; None when inconsistent."""
    outcome = solve_system(A, b)
    if outcome.solution is None:
        return None
    return [ModInt(v, A.modulus) for v in outcome.solution]


def mod_kernel(A: ModMatrix) -> List[List[ModInt]]:
    """Generators of {x : A x == 0 (mod d)}."""
    d = A.modulus
    form = diagonalize_mod(A.entries, d, track_right=True)
    generators = []
    for i, pivot in enumerate(form.diagonal):
        g = gcd(pivot, d)
        if g > 1:
            generators.append((form.right[:, i] * (d // g)) % d)
    for i in range(form.rank, A.cols):
        generators.append(form.right[:, i] % d)
    return [[ModInt(int(v), d) for v in g] for g in generators if g.any()]


def solve_via_integer_lift(A: ModMatrix, b: Sequence) -> Optional[List[int]]:
    """Reference route: Smith form of [A | d*I] over the integers."""
    d = A.modulus
    vector = _check_system(A, b)
    lift = np.concatenate(
        [A.entries.astype(object), d * np.eye(A.rows, dtype=int).astype(object)], axis=1
    )
    U, D, V = smith_normal_form(lift)
    target = U.dot(vector.astype(object))
    z = np.zeros(lift.shape[1], dtype=object)
    for i in range(A.rows):
        pivot = D[i, i] if i < min(D.shape) else 0
        if pivot == 0:
            if target[i] != 0:
                return None
            continue
        if target[i] % pivot:
            return None
        z[i] = target[i] // pivot
    y = V.dot(z)
    return [int(v) % d for v in y[:A.cols]]
