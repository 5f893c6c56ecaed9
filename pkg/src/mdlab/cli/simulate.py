"""
Monte-Carlo estimate of both sides of the duality identity
E_x[D(X(t), y)] = E_y[D(x, Y(t))].

Example usage:
>>> simulate.py --model open --x "-1 -1 1 1" --y "1 -1 0 1" --t 1 --n 100000 --seed 42
- both sides and their z-score
>>> simulate.py --model braided --x "2 1" --y "1 1" --species 2 --processes 4
- trajectories spread over four processes, same result as with one
>>> simulate.py --model msasep --x "1 0" --y "1 0" --t 0
- at time zero both sides are D(x, y) exactly, z = 0
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click
from termcolor import cprint

from .. import settings, simulate_gap
from ..lib.api import Model, RunConfig
from ..lib.qnum import format_rational
from .options import (
    boundary_option,
    emit_json,
    model_option,
    parse_configs,
    q_option,
    species_option,
    time_option,
    usage_errors,
)

Z_ALARM = 4.0


@click.command()
@model_option
@click.option("--x", "x", required=True, help="Start of the first side")
@click.option("--y", "y", required=True, help="Start of the second side")
@species_option
@q_option
@boundary_option
@time_option
@click.option(
    "--n", "n_traj", type=click.IntRange(min=1), default=100_000, help="Trajectories per side"
)
@click.option(
    "--seed", type=int, default=lambda: settings.get("default_seed"), help="Run seed"
)
@click.option(
    "--processes", type=click.IntRange(min=1), default=1, help="Worker processes"
)
def simulate(
    model: str,
    x: str,
    y: str,
    species: int | None,
    q: Fraction,
    Q: Fraction,
    t: Fraction,
    n_traj: int,
    seed: int,
    processes: int,
) -> None:
    """Estimate both sides of the duality identity."""
    with usage_errors():
        spec, (x_config, y_config) = parse_configs(model, [x, y], species)
        boundary = Q if spec.model == Model.OPEN else None
        result = simulate_gap(
            spec, q, boundary, x_config, y_config, t, n_traj, seed, processes
        )

    result["run"] = RunConfig(
        subcommand="simulate",
        model=spec.model.value,
        L=spec.L,
        species=spec.species,
        q=format_rational(q),
        Q=format_rational(boundary) if boundary is not None else "",
        seed=seed,
        extra={"x": x, "y": y, "t": format_rational(t), "n": str(n_traj)},
    ).to_json()
    emit_json(result)

    z = result["z"]
    color = "green" if abs(z) <= Z_ALARM else "yellow"
    cprint(f"z = {z:.3f} over {n_traj:_} trajectories per side", color, file=sys.stderr)


if "__main__" == __name__:
    simulate()
