"""
Main entry-point of the CLI for the `mdl` command.
"""

from __future__ import annotations

import logging
import sys

import click

from . import duality, rates, report, simulate, verify

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@click.group(invoke_without_command=True)
@click.option("-v", "--version", is_flag=True, help="Show current version and exit")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default="WARNING",
    help="Logging level of the library, logs go to stderr",
)
def cli(version: bool, log_level: str) -> None:
    """
    Exact and Monte-Carlo checks of Markov duality for
    multi-species, open and braided exclusion processes.

    Results are JSON on stdout, human summaries on stderr.

    See subcommands for details.
    """
    if version:
        from .. import __version__

        click.echo(__version__)
        sys.exit(0)
    logging.basicConfig(
        level=log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


cli.add_command(verify.verify)
cli.add_command(rates.rates)
cli.add_command(duality.duality)
cli.add_command(simulate.simulate)
cli.add_command(report.report)


if __name__ == "__main__":
    cli()
