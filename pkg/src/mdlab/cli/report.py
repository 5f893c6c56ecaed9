"""
Summarising stored verification reports per identity.

Example usage:
>>> report.py
- reports file from settings
>>> report.py reports.jsonl --failures -o summary.txt
- a given file, failing instances listed, saved to a file
"""

from __future__ import annotations

import click

from .. import ReportSummaryPlugin, settings
from ..lib.report_store import ReportStore


@click.command()
@click.argument("reports_file", required=False)
@click.option("-o", "--output-file", help="Dump summary to file instead of stdout")
@click.option("-F", "--failures", is_flag=True, help="List every failing report")
def report(reports_file: str | None, output_file: str | None, failures: bool) -> None:
    """Summarise stored reports."""
    path = reports_file or settings.reports_file()
    ReportSummaryPlugin(ReportStore(path)).show(
        output_file or None, include_failures=failures
    )


if "__main__" == __name__:
    report()
