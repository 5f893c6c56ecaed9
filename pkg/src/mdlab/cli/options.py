"""
Options and helpers shared by the `mdl` subcommands.

Every numeric parameter is given as an exact rational string ("1/2"),
never as a float.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Callable, Iterator, TypeVar

import click

from .. import settings
from ..lib.api import Config, Model, ModelSpec
from ..lib.errors import ConfigParseError, ParameterError, StateCapExceeded
from ..lib.qnum import check_open_unit, parse_rational
from ..lib.states import parse_config

F = TypeVar("F", bound=Callable[..., Any])


def _unit_rational(ctx: click.Context, param: click.Parameter, value: str | None) -> Fraction | None:
    if value is None:
        return None
    try:
        return check_open_unit(parse_rational(value), param.name or "value")
    except (ConfigParseError, ParameterError) as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param) from None


def _non_negative_rational(ctx: click.Context, param: click.Parameter, value: str) -> Fraction:
    try:
        result = parse_rational(value)
    except ConfigParseError as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param) from None
    if result < 0:
        raise click.BadParameter(f"must be non-negative, got {value}", ctx=ctx, param=param)
    return result


def q_option(f: F) -> F:
    return click.option(
        "--q",
        "q",
        default=lambda: settings.get("default_q"),
        callback=_unit_rational,
        help="Asymmetry parameter, rational in (0, 1)",
    )(f)


def boundary_option(f: F) -> F:
    return click.option(
        "--Q",
        "Q",
        default=lambda: settings.get("default_Q"),
        callback=_unit_rational,
        help="Boundary parameter of the open model, rational in (0, 1)",
    )(f)


def model_option(f: F) -> F:
    return click.option(
        "--model",
        type=click.Choice([model.value for model in Model]),
        required=True,
        help="Particle system",
    )(f)


def species_option(f: F) -> F:
    return click.option(
        "--species",
        "species",
        type=click.IntRange(min=1),
        default=None,
        help="n (msasep), r (open) or m (braided); by default the configuration decides",
    )(f)


time_option = click.option(
    "--t",
    "t",
    default="1",
    callback=_non_negative_rational,
    help="Time horizon, rational",
)


@contextmanager
def usage_errors() -> Iterator[None]:
    """Library errors about the request itself end as usage errors (exit 2)."""
    try:
        yield
    except (ParameterError, ConfigParseError, StateCapExceeded) as e:
        raise click.UsageError(str(e)) from None


def spec_for(model: str, configs: list[Config], species: int | None) -> ModelSpec:
    """Model spec fitting the given configurations.

    L is read from the number of sites; without `species` the largest
    absolute label (at least 1) is taken.
    """
    lengths = {len(config) for config in configs}
    if len(lengths) != 1:
        raise ParameterError(f"Configurations of different lengths: {sorted(lengths)}")
    kind = Model(model)
    sites = lengths.pop()
    L = sites - 1 if kind == Model.OPEN else sites
    if species is None:
        species = max([1] + [abs(label) for config in configs for label in config])
    return ModelSpec(kind, L, species)


def parse_configs(model: str, texts: list[str], species: int | None) -> tuple[ModelSpec, list[Config]]:
    raw = [parse_config(text) for text in texts]
    spec = spec_for(model, raw, species)
    return spec, [parse_config(text, spec) for text in texts]


def emit_json(data: dict[str, Any]) -> None:
    click.echo(json.dumps(data))
