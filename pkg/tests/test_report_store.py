from __future__ import annotations

from fractions import Fraction

from mdlab.lib.report_store import ReportStore

from .common import mock_report

REPORTS = [
    mock_report(identity="open_self_duality", params={"L": "2"}),
    mock_report(identity="detailed_balance", passed=False, max_residual=Fraction(1, 8), witness=(0, 3)),
]


def test_memory_only():
    store = ReportStore()
    store.write(REPORTS)
    assert store.read() == REPORTS


def test_write_and_read(tmp_path):
    path = tmp_path / "nested" / "reports.jsonl"
    ReportStore(path).write(REPORTS[:1])
    ReportStore(path).write(REPORTS[1:])
    assert len(path.read_text().splitlines()) == 2
    assert ReportStore(path).read() == REPORTS


def test_missing_file(tmp_path):
    assert ReportStore(tmp_path / "nothing.jsonl").read() == []


def test_unreadable_lines_skipped(tmp_path):
    path = tmp_path / "reports.jsonl"
    ReportStore(path).write(REPORTS)
    with open(path, "a") as f:
        f.write("\n")
        f.write('{"identity": "half-writ')
    assert ReportStore(path).read() == REPORTS
