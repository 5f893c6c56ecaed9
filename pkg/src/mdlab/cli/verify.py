"""
Running the exact verification suites.

Example usage:
>>> verify.py appendix --q 1/2
- fixtures of the two-block fused bond, exact
>>> verify.py open --L 3 --q 1/2 --Q 1/3
- self-duality and reversibility of the open model on sites 0..3
>>> verify.py all --progress -o reports.jsonl
- everything on default parameters, reports also appended to a file
>>> verify.py msasep --full
- the larger grid of lattice sizes and parameters

One JSON line per report on stdout, preceded by the run echo.
Exit code 0 when everything passes, 1 otherwise.
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click
from termcolor import cprint

from .. import settings, verify_suite
from ..lib.api import RunConfig
from ..lib.qnum import format_rational, parse_rational
from ..lib.verify import SUITES, SuiteParams
from .options import boundary_option, emit_json, q_option, usage_errors


@click.command()
@click.argument("suite", type=click.Choice(SUITES), default="all")
@q_option
@boundary_option
@click.option("--L", "L", type=click.IntRange(min=1), help="Pin the lattice size")
@click.option("--species", type=click.IntRange(min=1), help="Pin n, r or m")
@click.option(
    "-s",
    "--s",
    "s_values",
    multiple=True,
    help="Fission weight(s) in [0, 1] for the fixture checks",
)
@click.option("-f", "--full", is_flag=True, help="Walk the larger acceptance grid")
@click.option("-o", "--output", help="Append the reports as JSON lines to this file")
@click.option(
    "--save", is_flag=True, help="Append the reports to the reports file from settings"
)
@click.option("-p", "--progress", is_flag=True, help="Show progress bar on stderr")
def verify(
    suite: str,
    q: Fraction,
    Q: Fraction,
    L: int | None,
    species: int | None,
    s_values: tuple[str, ...],
    full: bool,
    output: str | None,
    save: bool,
    progress: bool,
) -> None:
    """Run exact verification suites."""
    with usage_errors():
        s_list = [parse_rational(s) for s in s_values] or [
            parse_rational(settings.get("default_s")),
            parse_rational("1/2"),
        ]
        params = SuiteParams(q=q, Q=Q, L=L, species=species, s_values=s_list, full=full)
        reports_file = output or (str(settings.reports_file()) if save else None)

        emit_json(
            {
                "run": RunConfig(
                    subcommand="verify",
                    model=suite,
                    L=L,
                    species=species,
                    q=format_rational(params.q),
                    Q=format_rational(params.Q),
                    s=",".join(format_rational(s) for s in s_list),
                    output=reports_file,
                    extra={"full": str(full)} if full else {},
                ).to_json()
            }
        )
        reports = verify_suite(suite, params, reports_file, progress)

    for report in reports:
        emit_json(report.to_json())
        if not report.passed:
            cprint(report.format(), "red", file=sys.stderr)

    passed = sum(report.passed for report in reports)
    color = "green" if passed == len(reports) else "red"
    cprint(f"{passed}/{len(reports)} checks passed", color, file=sys.stderr)
    sys.exit(0 if passed == len(reports) else 1)


if "__main__" == __name__:
    verify()
