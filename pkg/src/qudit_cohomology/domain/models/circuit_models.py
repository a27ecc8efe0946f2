"""Circuit model for computation with magic states."""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

from ..exceptions import ContractViolationError
from .clifford_models import CliffordGate
from .pauli_models import Gauge, PauliPoint


@dataclass(frozen=True)
class Condition:
    """Apply the gate only if register ``register`` holds ``value``."""
    register: int
    value: int


@dataclass(frozen=True)
class GateStep:
    gate: CliffordGate
    condition: Optional[Condition] = None


@dataclass(frozen=True)
class MeasureStep:
    """Measure T_a; the recorded outcome is the raw outcome plus ``outcome_shift``."""
    a: PauliPoint
    register: int
    outcome_shift: int = 0


Step = Union[GateStep, MeasureStep]


@dataclass(frozen=True)
class Circuit:
    d: int
    n: int
    gauge: Gauge
    steps: Tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))
        if (self.gauge.d, self.gauge.n) != (self.d, self.n):
            raise ContractViolationError("circuit gauge does not match circuit dimensions")
        written = set()
        for position, step in enumerate(self.steps):
            if isinstance(step, GateStep):
                if (step.gate.d, step.gate.n) != (self.d, self.n):
                    raise ContractViolationError(f"step {position}: gate '{step.gate.name}' has wrong dimensions")
                if step.condition is not None and step.condition.register not in written:
                    raise ContractViolationError(
                        f"step {position}: condition reads register {step.condition.register} before it is written"
                    )
            elif isinstance(step, MeasureStep):
                if (step.a.d, step.a.n) != (self.d, self.n):
                    raise ContractViolationError(f"step {position}: label {step.a} has wrong dimensions")
                if step.register in written:
                    raise ContractViolationError(f"step {position}: register {step.register} is written twice")
                written.add(step.register)
            else:
                raise ContractViolationError(f"step {position}: unknown step type {type(step).__name__}")

    @property
    def measurements(self) -> List[MeasureStep]:
        return [s for s in self.steps if isinstance(s, MeasureStep)]

    @property
    def is_measurement_only(self) -> bool:
        return all(isinstance(s, MeasureStep) for s in self.steps)


@dataclass(frozen=True)
class CompiledBranch:
    """Measurement-only circuit valid for outcome histories matching ``assumptions``."""
    assumptions: Tuple[Tuple[int, int], ...]
    circuit: Circuit

    @property
    def assumed(self) -> Dict[int, int]:
        return dict(self.assumptions)

    def consistent_with(self, registers: Mapping[int, int]) -> bool:
        return all(registers.get(reg, value) == value for reg, value in self.assumptions)


@dataclass(frozen=True)
class CompiledCircuit:
    """Case split of a circuit into measurement-only branches."""
    source: Circuit
    branches: Tuple[CompiledBranch, ...]


@dataclass
class SamplerState:
    """Phase-space point of one shot and the outcomes it has produced."""
    point: PauliPoint
    rng_seed: int
    outcome_log: List[int] = field(default_factory=list)


@dataclass
class SamplingResult:
    """Empirical outcome counts from the phase-space sampler."""
    counts: Dict[str, int]
    shots: int
    seed: int

    @property
    def distribution(self) -> Dict[str, float]:
        return {outcome: count / self.shots for outcome, count in sorted(self.counts.items())}
