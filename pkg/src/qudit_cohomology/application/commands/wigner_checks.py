"""Wigner function construction and verification command handler."""

import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ...domain.algebra import standard_gauge
from ...domain.exceptions import ContractViolationError, ResourceLimitError, UsageError
from ...domain.interfaces import IGaugeLoader
from ...domain.models import (
    ClassDecision, Gauge, PauliPoint, PhasePointBasis, PositiveRepWitness, Report, Verdict, enumerate_points
)
from ...infrastructure.storage.file import cochain_from_json, point_from_json, witness_to_json
from ..services import CliffordService, CohomologyService, WignerService
from .check_beta import encode_beta_decision, verify_beta_witness
from .common import decoded_witness, elapsed_ms, require_dimensions

logger = logging.getLogger(__name__)

ALL_CHECKS = ("sw", "covariance", "positivity", "bochner")
TRACIALITY_SAMPLES = 10
BOCHNER_SAMPLES = 100
REFUSAL_REASON = ("beta is cohomologically non-trivial, so no Wigner function of this form "
                  "represents Pauli measurements positively")


@dataclass
class WignerChecksCommand:
    """Command to build a phase-point basis and run the selected checks.

    ``checks`` of None selects every check for odd d and all but covariance
    for even d, where Clifford covariance cannot hold.
    """
    d: int
    n: int
    checks: Optional[Sequence[str]] = None
    gauge_path: Optional[str] = None
    seed: int = 0
    verify: bool = False


def parse_checks(raw: Optional[str]) -> Optional[Tuple[str, ...]]:
    """'all' or a comma-separated subset of sw, covariance, positivity, bochner."""
    if raw is None:
        return None
    if raw.strip() == "all":
        return ALL_CHECKS
    names = tuple(part.strip() for part in raw.split(",") if part.strip())
    unknown = [name for name in names if name not in ALL_CHECKS]
    if unknown or not names:
        raise UsageError(f"unknown checks {unknown or raw!r}; choose from {', '.join(ALL_CHECKS)} or 'all'")
    return names


class WignerChecksCommandHandler:
    """Handler for wigner commands."""

    def __init__(self, cohomology: CohomologyService, clifford: CliffordService,
                 wigner: WignerService, gauge_loader: IGaugeLoader):
        self._cohomology = cohomology
        self._clifford = clifford
        self._wigner = wigner
        self._gauge_loader = gauge_loader

    # ------------------------------------------------------------------
    # Individual checks
    # ------------------------------------------------------------------

    def _check_sw(self, basis: PhasePointBasis, rng: np.random.Generator) -> Dict[str, Any]:
        try:
            self._wigner.validate_basis(basis)
        except ContractViolationError as e:
            return {"passed": False, "error": str(e), "residual": float("inf")}
        residual = self._wigner.traciality_residual(basis, rng, TRACIALITY_SAMPLES)
        unit = self._wigner.check_magnitude_necessity(basis)
        passed = residual <= self._wigner.settings.matrix_tolerance and unit
        return {"passed": passed, "residual": residual, "unit_modulus": unit}

    def _check_covariance(self, basis: PhasePointBasis) -> Dict[str, Any]:
        translations: Dict[str, Any] = {}
        worst = 0.0
        failing = None
        for gate in self._clifford.generator_list(basis.d, basis.n, basis.gauge):
            check = self._wigner.covariance_report(basis, gate)
            worst = max(worst, check.max_residual)
            if not check.covariant and failing is None:
                failing = {"gate": gate.name, "point": check.failing_point}
            translations[gate.name] = check.translation
        result: Dict[str, Any] = {"passed": failing is None, "residual": worst, "translations": translations}
        if failing is not None:
            result["failure"] = failing
        return result

    def _labels(self, basis: PhasePointBasis, rng: np.random.Generator):
        d, n = basis.d, basis.n
        if d ** (2 * n) <= self._wigner.settings.exhaustive_point_limit:
            return list(enumerate_points(d, n))
        return [PauliPoint.from_vector(d, rng.integers(0, d, 2 * n).tolist())
                for _ in range(self._wigner.settings.exhaustive_point_limit)]

    def _check_positivity(self, basis: PhasePointBasis, rng: np.random.Generator) -> Dict[str, Any]:
        worst, theta_worst = 0.0, 0.0
        failing = None
        for a in self._labels(basis, rng):
            residual = self._wigner.positivity_report(basis, a)
            worst = max(worst, residual)
            if residual > self._wigner.settings.matrix_tolerance and failing is None:
                failing = a
            for s in range(basis.d):
                values = self._wigner.theta_effect(basis, a, s).values
                theta_worst = max(theta_worst, float(np.max(np.minimum(np.abs(values), np.abs(values - 1)))))
        tolerance = self._wigner.settings.matrix_tolerance
        result: Dict[str, Any] = {"passed": failing is None and theta_worst <= tolerance,
                                  "residual": worst, "theta_residual": theta_worst}
        if failing is not None:
            result["failing_label"] = failing
        return result

    def _check_bochner(self, d: int, rng: np.random.Generator) -> Dict[str, Any]:
        worst = 0.0
        mismatches = 0
        semidefinite = 0
        k = np.arange(d)
        for _ in range(BOCHNER_SAMPLES):
            raw = rng.normal(size=d) + 1j * rng.normal(size=d)
            f = (raw + np.conj(raw[(-k) % d])) / 2
            report, equivalent = self._wigner.bochner_check(f)
            worst = max(worst, report.max_eigen_residual)
            mismatches += not equivalent
            semidefinite += report.positive_semidefinite
        return {"passed": mismatches == 0 and worst <= self._wigner.settings.matrix_tolerance,
                "residual": worst, "samples": BOCHNER_SAMPLES, "semidefinite_samples": semidefinite}

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def _refusal(self, g: Gauge, decision: ClassDecision) -> Dict[str, Any]:
        return {"kind": "refusal", "reason": REFUSAL_REASON, "certificate": encode_beta_decision(decision, g)}

    def _build(self, g: Gauge, standard: bool):
        """(basis or None, witness document)."""
        if g.d % 2 and standard:
            return self._wigner.gross_basis(g.d, g.n), {"kind": "gross", "nu": []}
        try:
            representation = self._wigner.construct_positive_rep(g)
        except ResourceLimitError as e:
            if g.d % 2 or g.n < 2:
                raise
            logger.warning("%s; refusing with the Mermin certificate", e)
            cycle, value = self._cohomology.mermin_certificate(g.d, g.n, g)
            decision = ClassDecision(Verdict.NONTRIVIAL, cycle, "mermin", {"beta_value": int(value)})
            return None, self._refusal(g, decision)
        if not representation.found:
            return None, self._refusal(g, representation.decision)
        witness = {"kind": "positive-rep", **witness_to_json(representation.witness)}
        return representation.basis, witness

    async def handle(self, command: WignerChecksCommand) -> Report:
        """Build the basis (or refuse) and run the checks."""
        require_dimensions(command.d, command.n)
        start_time = time.time()
        g = self._gauge_loader.load_gauge(command.gauge_path, command.d, command.n)
        checks = tuple(command.checks) if command.checks is not None else \
            (ALL_CHECKS if command.d % 2 else tuple(c for c in ALL_CHECKS if c != "covariance"))
        parameters = {"d": command.d, "n": command.n, "gauge": g.name, "checks": list(checks), "seed": command.seed}

        basis, witness = self._build(g, command.gauge_path is None)
        residuals: Dict[str, float] = {}
        if basis is None:
            verdict = "REFUSED"
            logger.info("wigner d=%d n=%d: %s", command.d, command.n, REFUSAL_REASON)
        else:
            rng = np.random.default_rng(command.seed)
            results: Dict[str, Any] = {}
            for name in checks:
                if name == "sw":
                    results[name] = self._check_sw(basis, rng)
                elif name == "covariance":
                    results[name] = self._check_covariance(basis)
                elif name == "positivity":
                    results[name] = self._check_positivity(basis, rng)
                else:
                    results[name] = self._check_bochner(basis.d, rng)
                residuals[name] = results[name]["residual"]
                logger.info("check %s: %s", name, "pass" if results[name]["passed"] else "FAIL")
            witness["basis"] = basis.name
            witness["checks"] = results
            verdict = "PASS" if all(r["passed"] for r in results.values()) else "FAIL"

        report = Report(
            command="wigner",
            parameters=parameters,
            verdict=verdict,
            witness=witness,
            residuals=residuals,
            runtime_ms=elapsed_ms(start_time),
        )
        if command.verify:
            report.verified = self.verify(g, decoded_witness(report))
            logger.info("wigner witness re-verified: %s", report.verified)
        return report

    def verify(self, g: Gauge, witness: Dict[str, Any]) -> bool:
        kind = witness["kind"]
        if kind == "gross":
            return self._cohomology.verify_trivializing(standard_gauge(g.d, g.n), {})
        if kind == "refusal":
            certificate = witness["certificate"]
            return verify_beta_witness(self._cohomology, g, Verdict.NONTRIVIAL.value, certificate)
        rebuilt = PositiveRepWitness(
            g,
            np.array(witness["r"], dtype=np.int64),
            point_from_json(g.d, g.n, witness["x"]),
            cochain_from_json(witness["nu"], g.d, g.n),
        )
        return self._wigner.verify_witness(rebuilt)
