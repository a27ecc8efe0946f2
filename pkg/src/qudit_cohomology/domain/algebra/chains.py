"""Boundary map and cochain evaluation on the tuple complexes."""

from typing import List, Tuple

from ..exceptions import ContractViolationError
from ..models import Chain, Cochain, ModInt, PauliTuple


def _cell_boundary(cell: PauliTuple) -> List[Tuple[PauliTuple, int]]:
    entries = cell.entries
    k = len(entries)
    terms = [(PauliTuple(entries[1:], cell.restricted), 1)]
    for i in range(1, k):
        merged = entries[:i - 1] + (entries[i - 1] + entries[i],) + entries[i + 1:]
        terms.append((PauliTuple(merged, cell.restricted), (-1) ** i))
    terms.append((PauliTuple(entries[:-1], cell.restricted), (-1) ** k))
    return terms


def boundary(c: Chain) -> Chain:
    """Bar-complex boundary; restricted chains stay restricted."""
    if c.degree < 1:
        raise ContractViolationError("boundary needs a chain of degree at least 1")
    terms = []
    for cell, coefficient in c.coefficients.items():
        terms.extend((face, sign * coefficient) for face, sign in _cell_boundary(cell))
    return Chain.from_terms(c.d, c.degree - 1, terms, c.restricted)


def evaluate(f: Cochain, c: Chain) -> ModInt:
    if f.d != c.d:
        raise ContractViolationError(f"cochain is over Z_{f.d}, chain over Z_{c.d}")
    if f.degree != c.degree:
        raise ContractViolationError(f"cochain degree {f.degree} does not match chain degree {c.degree}")
    total = sum(coefficient * f.value(cell) for cell, coefficient in c.coefficients.items())
    return ModInt(total, c.d)


def coboundary_eval(f: Cochain, c: Chain) -> ModInt:
    """(delta f)(c) = f(boundary c)."""
    if f.degree != c.degree - 1:
        raise ContractViolationError(
            f"coboundary of a degree-{f.degree} cochain is evaluated on degree {f.degree + 1}, got {c.degree}"
        )
    return evaluate(f, boundary(c))
