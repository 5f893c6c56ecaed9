"""
Evaluating a duality functional at one pair of configurations.

Example usage:
>>> duality.py --model open --eta "1 -1 1 1" --xi "1 -1 0 1" --q 1/2 --Q 1/3
- open model on sites 0..3
>>> duality.py --model braided --eta "3 0" --xi "2 0" --species 3
- braided model with m=3
>>> duality.py --model msasep --eta "2 1 0" --xi "1 0 0"
- multi-species ASEP, n taken from the largest label
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click
from termcolor import cprint

from .. import evaluate_duality
from ..lib.api import Model, RunConfig
from ..lib.qnum import format_rational
from ..lib.states import format_config
from .options import (
    boundary_option,
    emit_json,
    model_option,
    parse_configs,
    q_option,
    species_option,
    usage_errors,
)


@click.command()
@model_option
@click.option("--eta", required=True, help='First configuration, e.g. "1 -1 1 1"')
@click.option("--xi", required=True, help="Second configuration")
@species_option
@q_option
@boundary_option
def duality(
    model: str, eta: str, xi: str, species: int | None, q: Fraction, Q: Fraction
) -> None:
    """Evaluate D(eta, xi)."""
    with usage_errors():
        spec, (eta_config, xi_config) = parse_configs(model, [eta, xi], species)
        boundary = Q if spec.model == Model.OPEN else None
        value = evaluate_duality(spec, eta_config, xi_config, q, boundary)

    emit_json(
        {
            **spec.describe(),
            "eta": format_config(eta_config),
            "xi": format_config(xi_config),
            "value": format_rational(value),
            "run": RunConfig(
                subcommand="duality",
                model=spec.model.value,
                L=spec.L,
                species=spec.species,
                q=format_rational(q),
                Q=format_rational(boundary) if boundary is not None else "",
                extra={"eta": eta, "xi": xi},
            ).to_json(),
        }
    )
    cprint(f"D = {format_rational(value)} ~ {float(value):.6g}", "green", file=sys.stderr)


if "__main__" == __name__:
    duality()
