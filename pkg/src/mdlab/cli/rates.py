"""
Transition law of a single braided bond from three independent constructions:
the closed-form rate, the fused Hecke matrix and the auxiliary particle process.

Example usage:
>>> rates.py --m 2 --k1 0 --k2 2 --q 1/2
- the fused bond matrix row (0, 2), the q^8 entry included
>>> rates.py --m 3 --k1 3 --k2 1 --lattice
- the lattice bond with 3 particles at x and 1 at x+1
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click
from termcolor import cprint

from .. import bond_distribution
from ..lib.api import RunConfig
from ..lib.qnum import format_rational
from .options import emit_json, q_option, usage_errors


@click.command()
@click.option("--m", "m", type=click.IntRange(min=1), required=True, help="Site capacity")
@click.option("--k1", type=click.IntRange(min=0), required=True, help="First occupancy")
@click.option("--k2", type=click.IntRange(min=0), required=True, help="Second occupancy")
@q_option
@click.option(
    "-l",
    "--lattice",
    is_flag=True,
    help="Read (k1, k2) as (eta_x, eta_x+1) instead of the fused bond blocks",
)
def rates(m: int, k1: int, k2: int, q: Fraction, lattice: bool) -> None:
    """Show the law of the new bond state."""
    if k1 > m or k2 > m:
        raise click.BadParameter(f"occupancies ({k1}, {k2}) exceed m={m}")
    with usage_errors():
        moves = bond_distribution(m, k1, k2, q, lattice=lattice)

    orientation = "lattice" if lattice else "fused"
    agree = all(move["agree"] for move in moves)
    emit_json(
        {
            "m": m,
            "from": [k1, k2],
            "orientation": orientation,
            "moves": moves,
            "agree": agree,
            "run": RunConfig(
                subcommand="rates",
                model="braided",
                species=m,
                q=format_rational(q),
                extra={"k1": str(k1), "k2": str(k2), "orientation": orientation},
            ).to_json(),
        }
    )
    if agree:
        cprint(f"{len(moves)} targets, all three constructions agree", "green", file=sys.stderr)
    else:
        cprint("Constructions disagree", "red", file=sys.stderr)
        sys.exit(1)


if "__main__" == __name__:
    rates()
