"""Residue-ring value types."""

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Union

import numpy as np

from ..exceptions import ContractViolationError


IntLike = Union[int, 'ModInt']


@dataclass(frozen=True, eq=False)
class ModInt:
    """An element of Z_modulus stored as its canonical residue."""
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ContractViolationError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, 'value', int(self.value) % self.modulus)

    def _coerce(self, other: IntLike) -> int:
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ContractViolationError(
                    f"cannot combine residues mod {self.modulus} and mod {other.modulus}"
                )
            return other.value
        return int(other)

    def __add__(self, other: IntLike) -> 'ModInt':
        return ModInt(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> 'ModInt':
        return ModInt(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: IntLike) -> 'ModInt':
        return ModInt(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other: IntLike) -> 'ModInt':
        return ModInt(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> 'ModInt':
        return ModInt(-self.value, self.modulus)

    def inverse(self) -> 'ModInt':
        """Multiplicative inverse; only units have one."""
        try:
            return ModInt(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError:
            raise ContractViolationError(f"{self.value} is not a unit mod {self.modulus}") from None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True, eq=False)
class ModMatrix:
    """Dense matrix over Z_modulus; entries are kept reduced as int64."""
    entries: np.ndarray
    modulus: int
    rows: int = field(init=False)
    cols: int = field(init=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise ContractViolationError(f"modulus must be positive, got {self.modulus}")
        array = np.array(self.entries, dtype=np.int64)
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, 0)
        if array.ndim != 2:
            raise ContractViolationError(f"ModMatrix needs a 2-d array, got shape {array.shape}")
        array = np.mod(array, self.modulus)
        array.setflags(write=False)
        object.__setattr__(self, 'entries', array)
        object.__setattr__(self, 'rows', array.shape[0])
        object.__setattr__(self, 'cols', array.shape[1])

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], modulus: int, cols: int = 0) -> 'ModMatrix':
        data: List[List[int]] = [list(map(int, row)) for row in rows]
        if not data:
            return cls(np.zeros((0, cols), dtype=np.int64), modulus)
        return cls(np.array(data, dtype=np.int64), modulus)

    @classmethod
    def identity(cls, size: int, modulus: int) -> 'ModMatrix':
        return cls(np.eye(size, dtype=np.int64), modulus)

    def apply(self, vector: Sequence[IntLike]) -> List[ModInt]:
        """Matrix-vector product reduced mod the modulus."""
        column = np.array([int(v) for v in vector], dtype=np.int64)
        if column.shape != (self.cols,):
            raise ContractViolationError(
                f"vector of length {column.shape[0]} does not match {self.rows}x{self.cols} matrix"
            )
        return [ModInt(int(v), self.modulus) for v in (self.entries @ column) % self.modulus]

    def matmul(self, other: 'ModMatrix') -> 'ModMatrix':
        if self.modulus != other.modulus or self.cols != other.rows:
            raise ContractViolationError("incompatible matrices for multiplication")
        return ModMatrix(self.entries @ other.entries, self.modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.modulus, self.entries.shape, self.entries.tobytes()))

    def to_lists(self) -> List[List[int]]:
        return self.entries.tolist()


def residues(values: Iterable[IntLike], modulus: int) -> List[ModInt]:
    """Wrap integers as residues mod modulus."""
    return [ModInt(int(v), modulus) for v in values]
