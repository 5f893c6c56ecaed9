"""
Groups stored reports by identity and returns statistics about each identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from ..lib.qnum import format_rational

if TYPE_CHECKING:  # pragma: no cover
    from ..lib.api import DualityReport, ReportSinkAPI


@dataclass
class IdentityStatistics:
    identity: str
    passed: int
    failed: int
    worst_residual: Fraction
    seconds: float

    @property
    def total(self) -> int:
        return self.passed + self.failed

    def format(self) -> str:
        return (
            f"{self.identity:<32} {self.passed:>6_} passed {self.failed:>6_} failed"
            f"  worst residual {format_rational(self.worst_residual):<12} ({self.seconds:.2f} s)"
        )


class ReportSummaryPlugin:
    def __init__(self, store: ReportSinkAPI):
        self.store = store
        self.reports = store.read()

    def get(self) -> list[IdentityStatistics]:
        return self._get_identity_statistics()

    def failures(self) -> list[DualityReport]:
        return [report for report in self.reports if not report.passed]

    def show(
        self, file_to_save: str | Path | None = None, include_failures: bool = False
    ) -> None:
        final_output = _get_printable_output(
            self._get_identity_statistics(), is_file=file_to_save is not None
        )
        # Listing the failing instances for replication purposes
        if include_failures and self.failures():
            failing = "\n".join(report.format() for report in self.failures())
            final_output = f"{final_output}\n{failing}"

        _show(final_output, file_to_save)

    def _get_identity_statistics(self) -> list[IdentityStatistics]:
        grouped: dict[str, list[DualityReport]] = {}
        for report in self.reports:
            grouped.setdefault(report.identity, []).append(report)

        statistics = [
            IdentityStatistics(
                identity=identity,
                passed=sum(report.passed for report in reports),
                failed=sum(not report.passed for report in reports),
                worst_residual=max(abs(report.max_residual) for report in reports),
                seconds=sum(report.seconds for report in reports),
            )
            for identity, reports in grouped.items()
        ]
        # Failing identities first, then the most frequent ones
        statistics.sort(key=lambda x: (-x.failed, -x.total, x.identity))
        return statistics


def _show(final_output: str, file_to_save: str | Path | None = None) -> None:
    if file_to_save:
        print(f"Saving report summary to {file_to_save}")
        with open(file_to_save, "w") as f:
            f.write(final_output)
    else:
        print(final_output)


def _get_printable_output(
    statistics_data: list[IdentityStatistics], is_file: bool = False
) -> str:
    summary = _get_data_summary(statistics_data)
    result_data = "\n".join(row.format() for row in statistics_data)
    # Putting summary at the most visible place - top for file, bottom for terminal
    return f"{summary}\n{result_data}" if is_file else f"{result_data}\n{summary}"


def _get_data_summary(statistics_data: list[IdentityStatistics]) -> str:
    identity_amount = len(statistics_data)
    passed = sum(row.passed for row in statistics_data)
    failed = sum(row.failed for row in statistics_data)
    return f"SUMMARY: {identity_amount:_} identities, {passed + failed:_} reports, {passed:_} passed, {failed:_} failed."
