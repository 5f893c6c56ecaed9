from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Sequence

from .api import DualityReport, ReportSinkAPI

logger = logging.getLogger(__name__)


class ReportStore(ReportSinkAPI):
    """Verification reports as JSON lines, one report per line.

    Without a file the reports are only kept in memory.
    """

    def __init__(self, reports_file_path: str | Path | None = None):
        self.reports_file_path = (
            Path(reports_file_path) if reports_file_path is not None else None
        )
        self.reports: list[DualityReport] = []

    def write(self, reports: Sequence[DualityReport]) -> None:
        self.reports.extend(reports)
        if self.reports_file_path is None:
            return
        self.reports_file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.reports_file_path, "a") as f:
            for report in reports:
                f.write(json.dumps(report.to_json()) + "\n")

    def read(self) -> list[DualityReport]:
        if self.reports_file_path is None:
            return list(self.reports)
        return self._load_reports_from_file()

    def _load_reports_from_file(self) -> list[DualityReport]:
        assert self.reports_file_path is not None
        try:
            lines = self.reports_file_path.read_text().splitlines()
        except FileNotFoundError:
            return []
        reports = []
        for number, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                reports.append(DualityReport.from_json(json.loads(line)))
            except (json.decoder.JSONDecodeError, KeyError):
                # half-written line
                logger.warning("Skipping unreadable report on line %d of %s", number, self.reports_file_path)
        return reports
