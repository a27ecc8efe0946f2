"""Simulate circuit command handler."""

import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ...domain.exceptions import ContractViolationError, ResourceLimitError, UsageError
from ...domain.interfaces import ICircuitLoader, IStateLoader
from ...domain.models import PositiveRepWitness, Report
from ...infrastructure.storage.file import cochain_from_json, point_from_json, witness_to_json
from ..services import SamplingService, WignerService
from .common import decoded_witness, elapsed_ms

logger = logging.getLogger(__name__)


@dataclass
class SimulateCircuitCommand:
    """Command to sample a circuit with a non-negative input state."""
    circuit_path: str
    state: str = "zero"
    shots: Optional[int] = None
    seed: Optional[int] = None
    gauge_path: Optional[str] = None
    verify: bool = False


class SimulateCircuitCommandHandler:
    """Handler for simulate commands."""

    def __init__(self, sampling: SamplingService, wigner: WignerService,
                 circuit_loader: ICircuitLoader, state_loader: IStateLoader):
        self._sampling = sampling
        self._wigner = wigner
        self._circuit_loader = circuit_loader
        self._state_loader = state_loader

    async def handle(self, command: SimulateCircuitCommand) -> Report:
        """Compile, sample and compare against the exact distribution."""
        settings = self._sampling.settings
        shots = command.shots if command.shots is not None else settings.default_shots
        seed = command.seed if command.seed is not None else settings.default_seed
        if shots < 1:
            raise UsageError(f"--shots must be positive, got {shots}")
        start_time = time.time()

        circuit = self._circuit_loader.load_circuit(command.circuit_path, command.gauge_path)
        d, n = circuit.d, circuit.n
        if d % 2 == 0:
            raise ContractViolationError(
                f"simulation needs odd d; d={d} has no positively representing Wigner function"
            )
        parameters = {"circuit": command.circuit_path, "d": d, "n": n, "state": command.state,
                      "shots": shots, "seed": seed, "gauge": circuit.gauge.name}
        rho = self._state_loader.load_state(command.state, d, n)

        representation = self._wigner.construct_positive_rep(circuit.gauge)
        basis, witness = representation.basis, representation.witness
        w_in = self._wigner.wigner_of(basis, rho)
        negativity = self._wigner.negativity_witness(w_in)
        if not negativity.nonnegative:
            logger.info("input state %s has negativity %.3e; refusing to sample",
                        command.state, negativity.total_negativity)
            return Report(
                command="simulate",
                parameters=parameters,
                verdict="REFUSED",
                witness={"kind": "negativity",
                         "points": [{"point": p, "value": v} for p, v in negativity.points],
                         "total_negativity": negativity.total_negativity},
                residuals={},
                runtime_ms=elapsed_ms(start_time),
            )

        compiled = self._sampling.compile_measurement_only(circuit)
        result = self._sampling.simulate_sampling(basis, witness, compiled, w_in, shots, seed)
        document: Dict[str, Any] = {"kind": "sampling", "counts": result.counts,
                                    "representation": witness_to_json(witness)}
        residuals: Dict[str, float] = {}
        try:
            exact = self._sampling.exact_distribution(compiled, rho)
        except ResourceLimitError as e:
            logger.warning("skipping the exact comparison: %s", e)
            exact = None
        if exact is None:
            verdict = "SAMPLED"
        else:
            distance = self._sampling.total_variation(result.distribution, exact)
            p_value = self._sampling.chi_squared_test(result, exact)
            residuals["total_variation"] = distance
            document["exact"] = exact
            document["chi_squared_p"] = p_value
            verdict = "CONSISTENT" if p_value >= settings.chi_squared_alpha else "INCONSISTENT"
            logger.info("simulated %d shots: TV %.4f, chi-squared p %.3g", shots, distance, p_value)

        report = Report(
            command="simulate",
            parameters=parameters,
            verdict=verdict,
            witness=document,
            residuals=residuals,
            runtime_ms=elapsed_ms(start_time),
        )
        if command.verify:
            decoded = decoded_witness(report)
            representation_doc = decoded["representation"]
            rebuilt = PositiveRepWitness(
                circuit.gauge,
                np.array(representation_doc["r"], dtype=np.int64),
                point_from_json(d, n, representation_doc["x"]),
                cochain_from_json(representation_doc["nu"], d, n),
            )
            rerun = self._sampling.simulate_sampling(basis, rebuilt, compiled, w_in, shots, seed)
            report.verified = self._wigner.verify_witness(rebuilt) and rerun.counts == decoded["counts"]
            logger.info("simulate witness re-verified: %s", report.verified)
        return report
