"""Helpers shared by the command handlers."""

import json
import time
from typing import Any, Dict

from ...domain.exceptions import UsageError
from ...domain.models import Report
from ...infrastructure.storage.file import to_jsonable


def require_dimensions(d: int, n: int) -> None:
    if d < 2:
        raise UsageError(f"--d must be at least 2, got {d}")
    if n < 1:
        raise UsageError(f"--n must be at least 1, got {n}")


def elapsed_ms(start_time: float) -> int:
    return int(round((time.time() - start_time) * 1000))


def decoded_witness(report: Report) -> Dict[str, Any]:
    """The report's witness as a consumer would read it back from NDJSON."""
    return json.loads(json.dumps(to_jsonable(report.witness)))
