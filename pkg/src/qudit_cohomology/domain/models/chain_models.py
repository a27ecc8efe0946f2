"""Chains, cochains and class decisions over Z_d."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from ..exceptions import ContractViolationError
from .pauli_models import PauliPoint

MAX_DEGREE = 3


def commute(a: PauliPoint, b: PauliPoint) -> bool:
    """True when the symplectic form [a, b] vanishes."""
    form = sum(p * q for p, q in zip(a.z, b.x)) - sum(p * q for p, q in zip(a.x, b.z))
    return form % a.d == 0


@dataclass(frozen=True)
class PauliTuple:
    """A basis tuple [v_1|...|v_k] of C_k (restricted) or of the unrestricted complex."""
    entries: Tuple[PauliPoint, ...]
    restricted: bool = True

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, 'entries', entries)
        if len(entries) > MAX_DEGREE:
            raise ContractViolationError(f"tuples stop at degree {MAX_DEGREE}, got {len(entries)}")
        if self.restricted:
            for i, a in enumerate(entries):
                for b in entries[i + 1:]:
                    if not commute(a, b):
                        raise ContractViolationError(f"restricted tuple holds non-commuting labels {a} and {b}")

    @property
    def degree(self) -> int:
        return len(self.entries)

    def sort_key(self) -> Tuple[int, ...]:
        return tuple(p.index for p in self.entries)

    def __str__(self) -> str:
        return "[" + "|".join(str(p) for p in self.entries) + "]"


@dataclass(frozen=True, eq=False)
class Chain:
    """Finitely supported Z_d-combination of basis tuples of one degree."""
    d: int
    degree: int
    restricted: bool = True
    coefficients: Mapping[PauliTuple, int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: Dict[PauliTuple, int] = {}
        for cell, coefficient in self.coefficients.items():
            if cell.degree != self.degree or cell.restricted != self.restricted:
                raise ContractViolationError(
                    f"tuple {cell} does not match chain degree {self.degree} / restricted={self.restricted}"
                )
            value = int(coefficient) % self.d
            if value:
                cleaned[cell] = value
        object.__setattr__(self, 'coefficients', cleaned)

    @classmethod
    def basis(cls, *entries: PauliPoint, restricted: bool = True, coefficient: int = 1) -> 'Chain':
        if not entries:
            raise ContractViolationError("use Chain.empty_cell for the degree-0 basis element")
        cell = PauliTuple(tuple(entries), restricted)
        return cls(entries[0].d, len(entries), restricted, {cell: coefficient})

    @classmethod
    def empty_cell(cls, d: int, restricted: bool = True) -> 'Chain':
        return cls(d, 0, restricted, {PauliTuple((), restricted): 1})

    @classmethod
    def zero(cls, d: int, degree: int, restricted: bool = True) -> 'Chain':
        return cls(d, degree, restricted, {})

    @classmethod
    def from_terms(cls, d: int, degree: int, terms: Iterable[Tuple[PauliTuple, int]],
                   restricted: bool = True) -> 'Chain':
        accumulated: Dict[PauliTuple, int] = {}
        for cell, coefficient in terms:
            accumulated[cell] = accumulated.get(cell, 0) + int(coefficient)
        return cls(d, degree, restricted, accumulated)

    def _check(self, other: 'Chain') -> None:
        if (self.d, self.degree, self.restricted) != (other.d, other.degree, other.restricted):
            raise ContractViolationError("chains differ in modulus, degree or restriction")

    def __add__(self, other: 'Chain') -> 'Chain':
        self._check(other)
        return Chain.from_terms(self.d, self.degree,
                                list(self.coefficients.items()) + list(other.coefficients.items()),
                                self.restricted)

    def __neg__(self) -> 'Chain':
        return self.scaled(-1)

    def __sub__(self, other: 'Chain') -> 'Chain':
        return self + (-other)

    def scaled(self, factor: int) -> 'Chain':
        return Chain(self.d, self.degree, self.restricted,
                     {cell: factor * c for cell, c in self.coefficients.items()})

    def is_zero(self) -> bool:
        return not self.coefficients

    def items(self) -> Iterator[Tuple[PauliTuple, int]]:
        return iter(sorted(self.coefficients.items(), key=lambda item: item[0].sort_key()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.d, self.degree, self.restricted) == (other.d, other.degree, other.restricted) \
            and self.coefficients == other.coefficients

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c}{cell}" for cell, c in self.items())


@dataclass(frozen=True)
class Cochain:
    """Z_d-valued functional on degree-k basis tuples, extended linearly."""
    d: int
    degree: int
    rule: Callable[[PauliTuple], int] = field(compare=False)
    name: str = ""

    @classmethod
    def from_points(cls, d: int, values: Mapping[PauliPoint, int], name: str = "nu") -> 'Cochain':
        """Degree-1 cochain from its values on labels; missing labels map to 0."""
        table = {point: int(v) % d for point, v in values.items()}
        return cls(d, 1, lambda cell: table.get(cell.entries[0], 0), name)

    def value(self, cell: PauliTuple) -> int:
        if cell.degree != self.degree:
            raise ContractViolationError(
                f"cochain '{self.name}' has degree {self.degree}, tuple {cell} has degree {cell.degree}"
            )
        return int(self.rule(cell)) % self.d

    def at(self, *entries: PauliPoint) -> int:
        return self.value(PauliTuple(tuple(entries), restricted=False))


class Verdict(str, Enum):
    """Outcome of a class-triviality decision."""
    TRIVIAL = "TRIVIAL"
    NONTRIVIAL = "NONTRIVIAL"


@dataclass
class ClassDecision:
    """Verdict plus the witness that makes it re-checkable."""
    verdict: Verdict
    witness: Any = None
    certificate_kind: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_trivial(self) -> bool:
        return self.verdict is Verdict.TRIVIAL

    @property
    def cochain(self) -> Optional[Dict[PauliPoint, int]]:
        return self.witness if self.is_trivial else None
