"""
State spaces of the three models and the counting statistics
used by the duality functionals.

Configurations are plain tuples. Entry `i` describes site `origin + i`,
where the origin is 0 for the open model and 1 otherwise.

>>> space = enumerate_states(ModelSpec(Model.BRAIDED, L=2, species=2))
>>> space.configs[:4]
((0, 0), (0, 1), (0, 2), (1, 0))
"""

from __future__ import annotations

import itertools
import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterator

from .. import settings
from .api import Config, Model, ModelSpec
from .errors import ConfigParseError, ParameterError, StateCapExceeded

logger = logging.getLogger(__name__)


class StateSpace:
    """All configurations of a model, in lexicographic order.

    The first site is the most significant one.
    """

    def __init__(self, spec: ModelSpec, configs: tuple[Config, ...]) -> None:
        self.spec = spec
        self.configs = configs
        self._index = {config: i for i, config in enumerate(configs)}

    def __len__(self) -> int:
        return len(self.configs)

    def __iter__(self) -> Iterator[Config]:
        return iter(self.configs)

    def __contains__(self, config: object) -> bool:
        return config in self._index

    def index_of(self, config: Config) -> int:
        try:
            return self._index[tuple(config)]
        except KeyError:
            raise ParameterError(
                f"Configuration {format_config(config)} is not a state of {self.spec}"
            ) from None

    def config_of(self, index: int) -> Config:
        return self.configs[index]

    def __repr__(self) -> str:
        return f"StateSpace({self.spec}, size={len(self)})"


def validate_spec(spec: ModelSpec) -> None:
    if spec.L < 1:
        raise ParameterError(f"Lattice size L must be at least 1, got {spec.L}")
    if spec.species < 1:
        raise ParameterError(f"Species parameter must be at least 1, got {spec.species}")


@lru_cache(maxsize=64)
def _enumerate_cached(spec: ModelSpec) -> StateSpace:
    configs = tuple(itertools.product(spec.labels, repeat=len(spec.sites)))
    logger.debug("Enumerated %d states of %s", len(configs), spec)
    return StateSpace(spec, configs)


def enumerate_states(spec: ModelSpec, cap: int | None = None) -> StateSpace:
    """Full state space of the model.

    Sizes are (n+1)^L, (2r+1)^(L+1) and (m+1)^L. Raises `StateCapExceeded`
    above the cap, which defaults to the `state_cap` setting.
    """
    validate_spec(spec)
    if cap is None:
        cap = settings.state_cap()
    if spec.size > cap:
        raise StateCapExceeded(spec.size, cap)
    return _enumerate_cached(spec)


def _position(config: Config, x: int, origin: int) -> int:
    position = x - origin
    if not 0 <= position < len(config):
        raise ParameterError(f"Site {x} is outside of the lattice")
    return position


def right_count(config: Config, x: int, j: int | None = None, origin: int = 1) -> int:
    """Number of species-`j` particles strictly right of site `x`.

    With `j=None` the occupancies are summed instead (braided model).
    """
    tail = config[_position(config, x, origin) + 1 :]
    if j is None:
        return sum(tail)
    return sum(1 for label in tail if label == j)


def left_count(config: Config, x: int, j: int | None = None, origin: int = 1) -> int:
    """Mirror of `right_count`."""
    head = config[: _position(config, x, origin)]
    if j is None:
        return sum(head)
    return sum(1 for label in head if label == j)


def species_sites(config: Config, k: int, origin: int = 1) -> tuple[int, ...]:
    """Ascending sites holding label `k`."""
    return tuple(origin + i for i, label in enumerate(config) if label == k)


def sector(model: Model, config: Config) -> Hashable:
    """Conserved particle content of a configuration.

    Per-species counts for the multi-species model, counts per |label|
    for the open model (the boundary flips signs) and the total
    number of particles for the braided model.
    """
    if model == Model.BRAIDED:
        return sum(config)
    if model == Model.OPEN:
        counts = Counter(abs(label) for label in config if label)
    else:
        counts = Counter(label for label in config if label)
    return tuple(sorted(counts.items()))


_SEPARATORS = re.compile(r"[\s,]+")


def parse_config(text: str, spec: ModelSpec | None = None) -> Config:
    """Configuration from a comma/space separated string, e.g. "-1 -1 1 1"."""
    tokens = [token for token in _SEPARATORS.split(text.strip()) if token]
    if not tokens:
        raise ConfigParseError(f"Empty configuration: {text!r}")
    try:
        config = tuple(int(token) for token in tokens)
    except ValueError:
        raise ConfigParseError(f"Not a list of integer labels: {text!r}") from None

    if spec is not None:
        if len(config) != len(spec.sites):
            raise ConfigParseError(
                f"Expected {len(spec.sites)} sites for {spec.model.value} with L={spec.L}, got {len(config)}"
            )
        bad = [label for label in config if label not in spec.labels]
        if bad:
            raise ConfigParseError(
                f"Labels {bad} outside of {spec.labels.start}..{spec.labels.stop - 1}"
            )
    return config


def format_config(config: Config) -> str:
    return " ".join(str(label) for label in config)


@dataclass(frozen=True)
class OpenSequence:
    """Open configuration with r = 1 as ordered particle positions.

    `xs` and `ys` hold the species 1 and species -1 sites in 1..L,
    both ascending, `z0` is the label at the boundary site 0.
    """

    L: int
    xs: tuple[int, ...]
    z0: int
    ys: tuple[int, ...]

    @property
    def d_plus(self) -> int:
        return len(self.xs)

    @property
    def d_minus(self) -> int:
        return len(self.ys)

    def format(self) -> str:
        xs = ",".join(str(x) for x in reversed(self.xs))
        ys = ",".join(str(y) for y in self.ys)
        return f"({xs};{self.z0};{ys})"


def to_sequence(config: Config) -> OpenSequence:
    if any(abs(label) > 1 for label in config):
        raise ParameterError("Sequence form needs labels in -1..1")
    bulk = config[1:]
    return OpenSequence(
        L=len(bulk),
        xs=tuple(x for x, label in enumerate(bulk, start=1) if label == 1),
        z0=config[0],
        ys=tuple(y for y, label in enumerate(bulk, start=1) if label == -1),
    )


def from_sequence(seq: OpenSequence) -> Config:
    if set(seq.xs) & set(seq.ys):
        raise ParameterError(f"Sites {set(seq.xs) & set(seq.ys)} hold both species")
    bulk = [0] * seq.L
    for x in seq.xs:
        bulk[x - 1] = 1
    for y in seq.ys:
        bulk[y - 1] = -1
    return (seq.z0, *bulk)
