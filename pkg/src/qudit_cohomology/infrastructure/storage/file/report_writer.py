"""Newline-delimited JSON report output."""

import json
import logging
import sys
from pathlib import Path
from typing import Optional

from ....domain.interfaces import IReportWriter
from ....domain.models import Report
from .json_codec import to_jsonable

logger = logging.getLogger(__name__)


class NdjsonReportWriter(IReportWriter):
    """Appends one JSON object per report to a file, or prints it to stdout."""

    def __init__(self, path: Optional[str] = None):
        self._path = Path(path) if path else None

    @staticmethod
    def encode(report: Report) -> str:
        return json.dumps(to_jsonable(report.to_dict()), ensure_ascii=False)

    def write(self, report: Report) -> None:
        line = self.encode(report)
        if self._path is None:
            sys.stdout.write(line + "\n")
            sys.stdout.flush()
            return
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with open(self._path, 'a', encoding='utf-8') as f:
            f.write(line + "\n")
        logger.debug("report '%s' appended to %s", report.command, self._path)
