"""Machine-readable command reports."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class Report:
    """One NDJSON record per command run."""
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    verdict: str = ""
    witness: Optional[Dict[str, Any]] = None
    residuals: Dict[str, float] = field(default_factory=dict)
    runtime_ms: int = 0
    verified: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        # witness values stay as domain objects; the writer encodes them
        data: Dict[str, Any] = {
            "command": self.command,
            "parameters": dict(self.parameters),
            "verdict": self.verdict,
            "witness": self.witness,
            "residuals": dict(self.residuals),
            "runtime_ms": self.runtime_ms,
        }
        if self.verified is not None:
            data["verified"] = self.verified
        return data
