"""Pauli labels, phase conventions and phase-decorated Pauli operators."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Mapping, Sequence, Tuple

from ..exceptions import ContractViolationError


@dataclass(frozen=True, order=True)
class PauliPoint:
    """A label a = (a_Z, a_X) in E = Z_d^n x Z_d^n; also a phase-space point."""
    d: int
    z: Tuple[int, ...]
    x: Tuple[int, ...]

    def __post_init__(self):
        if self.d < 2:
            raise ContractViolationError(f"local dimension must be at least 2, got {self.d}")
        if len(self.z) != len(self.x):
            raise ContractViolationError(
                f"z and x parts differ in length ({len(self.z)} vs {len(self.x)})"
            )
        object.__setattr__(self, 'z', tuple(int(v) % self.d for v in self.z))
        object.__setattr__(self, 'x', tuple(int(v) % self.d for v in self.x))

    @property
    def n(self) -> int:
        return len(self.z)

    @classmethod
    def zero(cls, d: int, n: int) -> 'PauliPoint':
        return cls(d, (0,) * n, (0,) * n)

    @classmethod
    def from_vector(cls, d: int, vector: Sequence[int]) -> 'PauliPoint':
        """Build from the flat layout (z_1..z_n, x_1..x_n)."""
        if len(vector) % 2:
            raise ContractViolationError(f"label vector must have even length, got {len(vector)}")
        n = len(vector) // 2
        return cls(d, tuple(vector[:n]), tuple(vector[n:]))

    @classmethod
    def from_index(cls, d: int, n: int, index: int) -> 'PauliPoint':
        digits = []
        for _ in range(2 * n):
            index, digit = divmod(index, d)
            digits.append(digit)
        return cls.from_vector(d, digits[::-1])

    @classmethod
    def unit(cls, d: int, n: int, position: int) -> 'PauliPoint':
        """Unit label e_position in the flat layout (Z parts first)."""
        vector = [0] * (2 * n)
        vector[position] = 1
        return cls.from_vector(d, vector)

    @property
    def vector(self) -> Tuple[int, ...]:
        return self.z + self.x

    @property
    def index(self) -> int:
        value = 0
        for digit in self.vector:
            value = value * self.d + digit
        return value

    def is_zero(self) -> bool:
        return not any(self.z) and not any(self.x)

    def _check(self, other: 'PauliPoint') -> None:
        if self.d != other.d or self.n != other.n:
            raise ContractViolationError(
                f"labels live in different spaces: (d={self.d}, n={self.n}) vs (d={other.d}, n={other.n})"
            )

    def __add__(self, other: 'PauliPoint') -> 'PauliPoint':
        self._check(other)
        return PauliPoint(
            self.d,
            tuple(a + b for a, b in zip(self.z, other.z)),
            tuple(a + b for a, b in zip(self.x, other.x)),
        )

    def __sub__(self, other: 'PauliPoint') -> 'PauliPoint':
        return self + (-other)

    def __neg__(self) -> 'PauliPoint':
        return PauliPoint(self.d, tuple(-v for v in self.z), tuple(-v for v in self.x))

    def scale(self, k: int) -> 'PauliPoint':
        k = int(k)
        return PauliPoint(self.d, tuple(k * v for v in self.z), tuple(k * v for v in self.x))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.z))}|{','.join(map(str, self.x))})"


def enumerate_points(d: int, n: int) -> Iterator[PauliPoint]:
    """All labels of E in index order (lexicographic on the flat vector)."""
    for index in range(d ** (2 * n)):
        yield PauliPoint.from_index(d, n, index)


def phase_scale(d: int) -> int:
    """1 for odd d (mu = omega), 2 for even d (mu = sqrt(omega))."""
    return 1 if d % 2 else 2


@dataclass(frozen=True)
class Gauge:
    """Phase convention gamma: E -> Z_{scale*d}.

    Values are given by a rule (``standard`` or ``zero``) plus explicit
    overrides keyed by label vector. Invariants are checked on the overrides;
    the rule values satisfy them by construction.
    """
    d: int
    n: int
    rule: str = "standard"
    overrides: Tuple[Tuple[Tuple[int, ...], int], ...] = field(default=())
    name: str = "standard"

    def __post_init__(self):
        if self.d < 2 or self.n < 1:
            raise ContractViolationError(f"gauge needs d >= 2 and n >= 1, got d={self.d}, n={self.n}")
        if self.rule not in ("standard", "zero"):
            raise ContractViolationError(f"unknown gauge rule '{self.rule}'")
        if self.rule == "zero" and self.d % 2 == 0:
            raise ContractViolationError("the zero rule violates the even-d parity constraint")
        modulus = self.modulus
        normalized = []
        for vector, value in sorted(self.overrides):
            point = PauliPoint.from_vector(self.d, vector)
            if point.n != self.n:
                raise ContractViolationError(f"gauge entry {list(vector)} has wrong length for n={self.n}")
            normalized.append((point.vector, int(value) % modulus))
        object.__setattr__(self, 'overrides', tuple(normalized))
        self._validate_overrides()

    @property
    def scale(self) -> int:
        return phase_scale(self.d)

    @property
    def modulus(self) -> int:
        return self.scale * self.d

    @cached_property
    def _table(self) -> Dict[Tuple[int, ...], int]:
        return dict(self.overrides)

    def _rule_value(self, point: PauliPoint) -> int:
        if self.rule == "zero":
            return 0
        dot = sum(a * b for a, b in zip(point.z, point.x))
        if self.d % 2:
            half = pow(2, -1, self.d)
            return (-half * dot) % self.d
        return dot % (2 * self.d)

    def gamma(self, point: PauliPoint) -> int:
        if point.d != self.d or point.n != self.n:
            raise ContractViolationError(
                f"label {point} does not belong to the gauge space (d={self.d}, n={self.n})"
            )
        value = self._table.get(point.vector)
        if value is None:
            return self._rule_value(point)
        return value

    def _validate_overrides(self) -> None:
        for vector, value in self.overrides:
            point = PauliPoint.from_vector(self.d, vector)
            if point.is_zero() and value != 0:
                raise ContractViolationError("gauge must satisfy gamma(0) = 0")
            if self.d % 2 == 0:
                parity = sum(a * b for a, b in zip(point.z, point.x)) % 2
                if value % 2 != parity:
                    raise ContractViolationError(
                        f"gamma{point} = {value} violates the parity constraint gamma = a_Z.a_X mod 2"
                    )

    def with_values(self, values: Mapping[PauliPoint, int], name: str) -> 'Gauge':
        """Gauge agreeing with this one except on the given labels."""
        merged = dict(self._table)
        for point, value in values.items():
            merged[point.vector] = int(value)
        return Gauge(self.d, self.n, self.rule, tuple(merged.items()), name)


@dataclass(frozen=True)
class PauliOp:
    """The operator mu^phase_exp Z(a_Z) X(a_X); phase_exp lives mod scale*d."""
    phase_exp: int
    point: PauliPoint

    def __post_init__(self):
        object.__setattr__(self, 'phase_exp', int(self.phase_exp) % self.modulus)

    @property
    def d(self) -> int:
        return self.point.d

    @property
    def scale(self) -> int:
        return phase_scale(self.point.d)

    @property
    def modulus(self) -> int:
        return self.scale * self.point.d

    @classmethod
    def identity(cls, d: int, n: int) -> 'PauliOp':
        return cls(0, PauliPoint.zero(d, n))

    def __mul__(self, other: 'PauliOp') -> 'PauliOp':
        # X^x Z^z = omega^{-x.z} Z^z X^x
        cross = sum(a * b for a, b in zip(self.point.x, other.point.z))
        phase = self.phase_exp + other.phase_exp - self.scale * cross
        return PauliOp(phase, self.point + other.point)

    def power(self, k: int) -> 'PauliOp':
        if k < 0:
            raise ContractViolationError(f"power needs a non-negative exponent, got {k}")
        result = PauliOp.identity(self.d, self.point.n)
        for _ in range(int(k)):
            result = result * self
        return result

    def times_omega(self, exponent: int) -> 'PauliOp':
        return PauliOp(self.phase_exp + self.scale * int(exponent), self.point)
