from __future__ import annotations

import pytest
from click.testing import CliRunner

from mdlab import __version__
from mdlab.cli.mdl import cli

from .common import json_lines


@pytest.fixture
def run(isolated_settings):
    runner = CliRunner()

    def invoke(*args: str):
        return runner.invoke(cli, list(args))

    return invoke


def test_version(run):
    result = run("--version")
    assert result.exit_code == 0
    assert result.output.strip() == __version__


def test_verify_appendix(run):
    result = run("verify", "appendix", "--q", "1/2")
    assert result.exit_code == 0
    lines = json_lines(result.output)
    assert lines[0]["run"]["subcommand"] == "verify"
    assert lines[0]["run"]["model"] == "appendix"
    reports = lines[1:]
    assert len(reports) == 2
    assert all(report["pass"] for report in reports)
    assert {report["identity"] for report in reports} == {"appendix_fixtures"}


def test_verify_open_pinned(run):
    result = run("verify", "open", "--L", "1")
    assert result.exit_code == 0
    assert [line["identity"] for line in json_lines(result.output)[1:]] == [
        "open_self_duality",
        "detailed_balance",
        "open_worked_example",
    ]


def test_verify_output_then_report(run, tmp_path):
    path = tmp_path / "reports.jsonl"
    assert run("verify", "appendix", "-o", str(path)).exit_code == 0
    assert len(path.read_text().splitlines()) == 2

    result = run("report", str(path))
    assert result.exit_code == 0
    assert "SUMMARY: 1 identities, 2 reports, 2 passed, 0 failed." in result.output


def test_verify_rejects_q(run):
    assert run("verify", "appendix", "--q", "2").exit_code == 2
    assert run("verify", "appendix", "--q", "abc").exit_code == 2
    assert run("verify", "nope").exit_code == 2


def test_rates_fused(run):
    result = run("rates", "--m", "2", "--k1", "0", "--k2", "2", "--q", "1/2")
    assert result.exit_code == 0
    (line,) = json_lines(result.output)
    assert line["orientation"] == "fused"
    assert line["agree"] is True
    moves = {tuple(move["to"]): move for move in line["moves"]}
    assert moves[(2, 0)]["closed_form"] == "1/256"
    assert moves[(2, 0)]["aux_process"] == "1/256"
    assert moves[(1, 1)]["fusion_oracle"] == "75/256"


def test_rates_lattice(run):
    result = run("rates", "--m", "2", "--k1", "2", "--k2", "0", "--lattice")
    assert result.exit_code == 0
    (line,) = json_lines(result.output)
    assert line["orientation"] == "lattice"
    moves = {tuple(move["to"]): move["closed_form"] for move in line["moves"]}
    assert moves[(0, 2)] == "1/256"


def test_rates_rejects_occupancy(run):
    assert run("rates", "--m", "2", "--k1", "3", "--k2", "0").exit_code == 2


def test_duality_open(run):
    result = run(
        "duality", "--model", "open", "--eta", "1 -1 1 1", "--xi", "1 -1 0 1", "--q", "1/2", "--Q", "1/3"
    )
    assert result.exit_code == 0
    (line,) = json_lines(result.output)
    assert line["value"] == "82944"
    assert line["L"] == "3"
    assert line["run"]["Q"] == "1/3"


def test_duality_braided(run):
    result = run("duality", "--model", "braided", "--eta", "3 0", "--xi", "2 0", "--species", "3")
    assert result.exit_code == 0
    (line,) = json_lines(result.output)
    assert line["value"] == "4096"
    assert line["m"] == "3"


def test_duality_bad_configurations(run):
    assert run("duality", "--model", "msasep", "--eta", "1 x", "--xi", "1 0").exit_code == 2
    assert run("duality", "--model", "msasep", "--eta", "1 0 0", "--xi", "1 0").exit_code == 2
    assert run("duality", "--model", "msasep", "--eta", "2 0", "--xi", "1 0", "--species", "1").exit_code == 2


def test_simulate_at_time_zero(run):
    result = run("simulate", "--model", "msasep", "--x", "1 1", "--y", "1 0", "--t", "0", "--n", "5")
    assert result.exit_code == 0
    (line,) = json_lines(result.output)
    assert line["z"] == 0
    assert line["side1"]["mean"] == line["side2"]["mean"] == 16.0
    assert line["side1"]["count"] == 5
    assert line["run"]["seed"] == 42


def test_simulate_rejects_time(run):
    assert run("simulate", "--model", "msasep", "--x", "1 0", "--y", "1 0", "--t=-1").exit_code == 2


def test_state_cap_env_must_be_integer(run, monkeypatch):
    monkeypatch.setenv("MDL_STATE_CAP", "lots")
    result = run("verify", "open", "--L", "1")
    assert result.exit_code == 2
    assert "MDL_STATE_CAP" in result.output
