"""Check beta command handler."""

import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, Optional

from ...domain.exceptions import ResourceLimitError
from ...domain.interfaces import IGaugeLoader
from ...domain.models import ClassDecision, Gauge, Report, Verdict
from ...infrastructure.storage.file import (
    certificate_from_json, certificate_to_json, cochain_from_json, cochain_to_json
)
from ..services import CohomologyService
from .common import decoded_witness, elapsed_ms, require_dimensions

logger = logging.getLogger(__name__)


@dataclass
class CheckBetaCommand:
    """Command to decide whether the commutation phase class vanishes."""
    d: int
    n: int
    gauge_path: Optional[str] = None
    verify: bool = False


def encode_beta_decision(decision: ClassDecision, g: Gauge) -> Dict[str, Any]:
    if decision.is_trivial:
        return {"kind": decision.certificate_kind, "nu": cochain_to_json(decision.witness)}
    total = decision.details["beta_value"]
    return {"kind": decision.certificate_kind, "cycle": certificate_to_json(decision.witness, g, total)}


def verify_beta_witness(cohomology: CohomologyService, g: Gauge, verdict: str, witness: Dict[str, Any]) -> bool:
    """Re-check a decoded check-beta witness against the gauge."""
    if verdict == Verdict.TRIVIAL.value:
        return cohomology.verify_trivializing(g, cochain_from_json(witness["nu"], g.d, g.n))
    cycle, total = certificate_from_json(witness["cycle"], g.n)
    is_cycle, value = cohomology.verify_cycle(g, cycle)
    return is_cycle and value == total % g.d


class CheckBetaCommandHandler:
    """Handler for check-beta commands."""

    def __init__(self, cohomology: CohomologyService, gauge_loader: IGaugeLoader):
        self._cohomology = cohomology
        self._gauge_loader = gauge_loader

    def _decide(self, g: Gauge) -> ClassDecision:
        try:
            return self._cohomology.decide_beta_trivial(g)
        except ResourceLimitError as e:
            if g.d % 2 == 0 and g.n >= 2:
                logger.warning("%s; falling back to the Mermin certificate", e)
                cycle, value = self._cohomology.mermin_certificate(g.d, g.n, g)
                return ClassDecision(Verdict.NONTRIVIAL, cycle, "mermin", {"beta_value": int(value)})
            if g.d % 2:
                logger.warning("%s; falling back to the gauge comparison witness", e)
                return self._cohomology.gauge_comparison_witness(g)
            raise

    async def handle(self, command: CheckBetaCommand) -> Report:
        """Decide [beta] and package the witness."""
        require_dimensions(command.d, command.n)
        start_time = time.time()
        g = self._gauge_loader.load_gauge(command.gauge_path, command.d, command.n)
        decision = self._decide(g)

        report = Report(
            command="check-beta",
            parameters={"d": command.d, "n": command.n, "gauge": g.name},
            verdict=decision.verdict.value,
            witness=encode_beta_decision(decision, g),
            residuals={},
            runtime_ms=elapsed_ms(start_time),
        )
        if command.verify:
            report.verified = verify_beta_witness(self._cohomology, g, report.verdict, decoded_witness(report))
            logger.info("check-beta witness re-verified: %s", report.verified)
        return report
