"""Domain models package."""

from .modular_models import ModInt, ModMatrix, residues
from .pauli_models import PauliPoint, Gauge, PauliOp, enumerate_points, phase_scale
from .chain_models import PauliTuple, Chain, Cochain, Verdict, ClassDecision, commute
from .clifford_models import CliffordGate, Obstruction
from .wigner_models import (
    PhasePointBasis, WignerFunction, ThetaEffect, PositiveRepWitness,
    CovarianceCheck, BochnerReport, NegativityReport, PositiveRepresentation
)
from .circuit_models import (
    Condition, GateStep, MeasureStep, Step, Circuit,
    CompiledBranch, CompiledCircuit, SamplerState, SamplingResult
)
from .report_models import Report

__all__ = [
    # Modular models
    'ModInt',
    'ModMatrix',
    'residues',

    # Pauli models
    'PauliPoint',
    'Gauge',
    'PauliOp',
    'enumerate_points',
    'phase_scale',

    # Chain models
    'PauliTuple',
    'Chain',
    'Cochain',
    'Verdict',
    'ClassDecision',
    'commute',

    # Clifford models
    'CliffordGate',
    'Obstruction',

    # Wigner models
    'PhasePointBasis',
    'WignerFunction',
    'ThetaEffect',
    'PositiveRepWitness',
    'CovarianceCheck',
    'BochnerReport',
    'NegativityReport',
    'PositiveRepresentation',

    # Circuit models
    'Condition',
    'GateStep',
    'MeasureStep',
    'Step',
    'Circuit',
    'CompiledBranch',
    'CompiledCircuit',
    'SamplerState',
    'SamplingResult',

    # Report models
    'Report',
]
