"""
Duality functionals of the three models.

D(eta, xi) is read as a matrix with rows eta and columns xi, the
self-duality being L D = D L^T.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Hashable

from .api import Config, Model, ModelSpec
from .coideal import build_ground_frame, particle_count, symmetry_series
from .common import RationalMatrix
from .errors import DimensionMismatch, ParameterError
from .generators import build_msasep
from .qnum import BinomialConvention, q_binomial
from .states import StateSpace, enumerate_states, left_count, right_count, sector, species_sites

logger = logging.getLogger(__name__)


class MsasepReading(str, Enum):
    """Which configuration the right counts of the multi-species functional look at."""

    ETA = "eta"
    XI = "xi"


def _same_length(eta: Config, xi: Config) -> None:
    if len(eta) != len(xi):
        raise DimensionMismatch(f"Configurations of lengths {len(eta)} and {len(xi)}")


def _right_at_least(config: Config, x: int, k: int, origin: int = 1) -> int:
    """Particles of species >= k strictly right of x."""
    return sum(1 for label in config[x - origin + 1 :] if label >= k)


def _left_at_least(config: Config, x: int, k: int, origin: int = 1) -> int:
    return sum(1 for label in config[: x - origin] if label >= k)


def duality_msasep(
    eta: Config, xi: Config, q: Fraction, reading: MsasepReading = MsasepReading.ETA
) -> Fraction:
    """prod over particles of xi: 1{eta(x) >= xi(x)} q^{-2x - 2 sum_{j >= xi(x)} N_x^j}."""
    _same_length(eta, xi)
    counted = eta if reading == MsasepReading.ETA else xi
    exponent = 0
    for x, k in enumerate(xi, start=1):
        if k == 0:
            continue
        if eta[x - 1] < k:
            return Fraction(0)
        exponent += -2 * x - 2 * _right_at_least(counted, x, k)
    return q**exponent


def duality_msasep_left(eta: Config, xi: Config, q: Fraction) -> Fraction:
    """Left-count variant, prod 1{eta(x) >= xi(x)} q^{-2x + 2 sum_{j >= xi(x)} N<-_x^j(eta)}.

    Equal to `duality_msasep` up to a constant on every block of fixed
    particle content.
    """
    _same_length(eta, xi)
    exponent = 0
    for x, k in enumerate(xi, start=1):
        if k == 0:
            continue
        if eta[x - 1] < k:
            return Fraction(0)
        exponent += -2 * x + 2 * _left_at_least(eta, x, k)
    return q**exponent


def duality_open(eta: Config, xi: Config, q: Fraction, Q: Fraction) -> Fraction:
    """Self-duality functional of the open ASEP with r = 1, sites 0..L.

    The -1 particles of xi carry q^{2y - 2 N<-_y^{-1}(eta)}.
    """
    _same_length(eta, xi)
    if any(abs(label) > 1 for label in (*eta, *xi)):
        raise ParameterError("The open functional is defined for r = 1 only")
    plus_xi = species_sites(xi, 1, origin=0)
    minus_xi = species_sites(xi, -1, origin=0)
    if any(eta[x] != 1 for x in plus_xi) or any(eta[y] != -1 for y in minus_xi):
        return Fraction(0)

    exponent = 0
    for x in plus_xi:
        exponent += -2 * x - 2 * right_count(eta, x, 1, origin=0)
    for y in minus_xi:
        exponent += 2 * y - 2 * left_count(eta, y, -1, origin=0)
        exponent += 2 * right_count(xi, y, 1, origin=0)
    plus_eta = len(species_sites(eta, 1, origin=0))
    exponent += -2 * len(minus_xi) * plus_eta
    exponent += len(plus_xi) * (len(plus_xi) - 1)
    return Q ** (-2 * len(plus_xi)) * q**exponent


def duality_braided(
    eta: Config,
    xi: Config,
    q: Fraction,
    m: int,
    convention: BinomialConvention = BinomialConvention.STANDARD,
) -> Fraction:
    """prod_x binom(eta_x, xi_x) / binom(m, xi_x) q^{xi_x (-2 m x + 2 N<-_x(eta))}, sites 1..L."""
    _same_length(eta, xi)
    value = Fraction(1)
    for x, (e, k) in enumerate(zip(eta, xi), start=1):
        if k == 0:
            continue
        if e < k:
            return Fraction(0)
        value *= q_binomial(e, k, q, convention) / q_binomial(m, k, q, convention)
        value *= q ** (k * (-2 * m * x + 2 * left_count(eta, x)))
    return value


class Functional:
    """A duality functional with its parameters bound."""

    def __init__(self, spec: ModelSpec, evaluate: Callable[[Config, Config], Fraction]) -> None:
        self.spec = spec
        self._evaluate = evaluate

    def __call__(self, eta: Config, xi: Config) -> Fraction:
        return self._evaluate(eta, xi)


def functional_for(
    spec: ModelSpec,
    q: Fraction,
    Q: Fraction | None = None,
    reading: MsasepReading = MsasepReading.ETA,
    convention: BinomialConvention = BinomialConvention.STANDARD,
) -> Functional:
    if spec.model == Model.MSASEP:
        return Functional(spec, lambda eta, xi: duality_msasep(eta, xi, q, reading))
    if spec.model == Model.OPEN:
        if Q is None:
            raise ParameterError("The open functional needs Q")
        if spec.species != 1:
            raise ParameterError("The open functional is defined for r = 1 only")
        return Functional(spec, lambda eta, xi: duality_open(eta, xi, q, Q))
    return Functional(
        spec, lambda eta, xi: duality_braided(eta, xi, q, spec.species, convention)
    )


@dataclass
class DualityMatrix:
    space: StateSpace
    matrix: RationalMatrix

    def value(self, eta: Config, xi: Config) -> Fraction:
        return self.matrix[self.space.index_of(eta), self.space.index_of(xi)]


def tabulate(space: StateSpace, functional: Callable[[Config, Config], Fraction]) -> DualityMatrix:
    matrix = RationalMatrix(len(space))
    for i, eta in enumerate(space):
        for j, xi in enumerate(space):
            value = functional(eta, xi)
            if value:
                matrix.rows.setdefault(i, {})[j] = value
    logger.debug("Tabulated duality over %d states, %d nonzero", len(space), matrix.nnz)
    return DualityMatrix(space, matrix)


def duality_matrix(
    spec: ModelSpec,
    q: Fraction,
    Q: Fraction | None = None,
    reading: MsasepReading = MsasepReading.ETA,
    convention: BinomialConvention = BinomialConvention.STANDARD,
) -> DualityMatrix:
    """The functional over the full state space of `spec`."""
    return tabulate(enumerate_states(spec), functional_for(spec, q, Q, reading, convention))


def duality_open_from_symmetry(L: int, q: Fraction, Q: Fraction) -> DualityMatrix:
    """G^{-1} S G^{-1} with S = sum_d ([d]!)^{-1} Delta(f)^d, equal to `duality_open`.

    The raw entry at (eta, xi) is off by a power of q fixed by the particle
    numbers alone, q^{-d(eta)(d(eta)-1) - 2 d(xi)(L+1-d(eta))}, which is
    divided out here.
    """
    frame = build_ground_frame(L, q, Q)
    series = symmetry_series(L, q, Q)
    matrix = RationalMatrix(len(frame.space))
    for i, j, value in series.items():
        d_eta = particle_count(frame.space.config_of(i))
        d_xi = particle_count(frame.space.config_of(j))
        scale = q ** (d_eta * (d_eta - 1) + 2 * d_xi * (L + 1 - d_eta))
        matrix[i, j] = value / (frame.g[i] * frame.g[j]) * scale
    return DualityMatrix(frame.space, matrix)


def markov_residual(generator: RationalMatrix, duality: RationalMatrix) -> RationalMatrix:
    """L D - D L^T."""
    if generator.shape != duality.shape:
        raise DimensionMismatch(
            f"Generator {generator.shape} and duality {duality.shape} do not fit"
        )
    return generator @ duality - duality @ generator.T


def block_ratios(
    a: DualityMatrix, b: DualityMatrix
) -> dict[tuple[Hashable, Hashable], Fraction] | None:
    """Ratio a/b on every (sector(eta), sector(xi)) block, None if it is not constant.

    Both functionals must vanish on the same entries.
    """
    if a.space.configs != b.space.configs:
        raise DimensionMismatch("Duality matrices over different state spaces")
    model = a.space.spec.model
    ratios: dict[tuple[Hashable, Hashable], Fraction] = {}
    for i, eta in enumerate(a.space):
        for j, xi in enumerate(a.space):
            va, vb = a.matrix[i, j], b.matrix[i, j]
            if not va and not vb:
                continue
            if not va or not vb:
                logger.debug("Supports differ at (%s, %s)", eta, xi)
                return None
            key = (sector(model, eta), sector(model, xi))
            if ratios.setdefault(key, va / vb) != va / vb:
                logger.debug("Ratio not constant on block %s", key)
                return None
    return ratios


def check_block_proportional(a: DualityMatrix, b: DualityMatrix) -> bool:
    return block_ratios(a, b) is not None


def resolve_msasep_reading(
    L: int = 4, n: int = 2, q: Fraction = Fraction(1, 2)
) -> tuple[MsasepReading, list[MsasepReading]]:
    """Pick the reading of the multi-species functional that is an exact self-duality.

    Returns the winner and the readings that failed.
    """
    generator = build_msasep(L, n, q)
    spec = ModelSpec(Model.MSASEP, L, n)
    passing, failing = [], []
    for reading in MsasepReading:
        duality = duality_matrix(spec, q, reading=reading)
        if markov_residual(generator.matrix, duality.matrix).is_zero():
            passing.append(reading)
        else:
            failing.append(reading)
    if len(passing) != 1:
        raise ParameterError(f"Expected exactly one self-dual reading, got {passing}")
    logger.info("Multi-species reading %s wins over %s", passing[0].value, failing)
    return passing[0], failing
