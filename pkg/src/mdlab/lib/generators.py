"""
Continuous-time generators of the three particle systems.

Rows are source states, columns targets, every row sums to zero.

>>> gen = build_msasep(L=2, n=1, q=Fraction(1, 2))
>>> gen.rate((1, 0), (0, 1))
Fraction(1, 4)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterator

from typing_extensions import Self

from .api import BondRatesAPI, Config, Model, ModelSpec
from .common import RationalMatrix
from .errors import ParameterError
from .fusion import fused_bond_probability
from .qnum import BinomialConvention, check_open_unit, format_rational, q_binomial, q_pochhammer
from .states import StateSpace, enumerate_states

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RateConvention:
    """Local exchange and boundary rates.

    A bond (k, l) with k > l swaps at `rate_desc`, a bond (l, k) at
    `rate_asc`. At the boundary site -k flips to k at `rate_in` and
    k to -k at `rate_out`.
    """

    rate_asc: Fraction
    rate_desc: Fraction
    rate_in: Fraction = Fraction(1)
    rate_out: Fraction = Fraction(1)

    @classmethod
    def squared(cls, q: Fraction, Q: Fraction | None = None) -> Self:
        """Rates 1, q^2 in the bulk and Q^2, 1 at the boundary."""
        return cls(
            rate_asc=Fraction(1),
            rate_desc=q**2,
            rate_in=Q**2 if Q is not None else Fraction(1),
        )

    @classmethod
    def linear(cls, q: Fraction, Q: Fraction | None = None) -> Self:
        """Rates 1, q in the bulk and Q, 1 at the boundary."""
        return cls(
            rate_asc=Fraction(1),
            rate_desc=Fraction(q),
            rate_in=Fraction(Q) if Q is not None else Fraction(1),
        )


class SparseGenerator:
    """Generator over an enumerated state space.

    Only off-diagonal rates are given, the diagonal is minus the row sum.
    """

    def __init__(self, space: StateSpace, rates: dict[tuple[int, int], Fraction]) -> None:
        self.space = space
        self.matrix = RationalMatrix(len(space))
        for (i, j), rate in rates.items():
            if i == j:
                raise ParameterError(f"Diagonal rate given for state {space.config_of(i)}")
            if rate < 0:
                raise ParameterError(f"Negative rate {rate} for {i} -> {j}")
            self.matrix[i, j] = rate
        for i, total in enumerate(self.matrix.row_sums()):
            if total:
                self.matrix[i, i] = -total

    @property
    def spec(self) -> ModelSpec:
        return self.space.spec

    def __len__(self) -> int:
        return len(self.space)

    def rate(self, source: Config, target: Config) -> Fraction:
        return self.matrix[self.space.index_of(source), self.space.index_of(target)]

    def off_diagonal(self) -> Iterator[tuple[int, int, Fraction]]:
        return ((i, j, v) for i, j, v in self.matrix.items() if i != j)

    def transitions(self, source: Config) -> dict[Config, Fraction]:
        i = self.space.index_of(source)
        return {
            self.space.config_of(j): rate for j, rate in self.matrix.row(i).items() if j != i
        }

    @property
    def T(self) -> RationalMatrix:
        return self.matrix.T

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        return self.matrix @ other

    def row_sums(self) -> list[Fraction]:
        return self.matrix.row_sums()

    def to_dense(self) -> list[list[Fraction]]:
        return self.matrix.to_dense()

    def to_json(self) -> dict[str, Any]:
        return {
            "states": [list(config) for config in self.space],
            "entries": [[i, j, format_rational(v)] for i, j, v in self.matrix.items()],
        }


def _swap(config: Config, p: int) -> Config:
    swapped = list(config)
    swapped[p], swapped[p + 1] = swapped[p + 1], swapped[p]
    return tuple(swapped)


def _bulk_moves(config: Config, positions: range, conv: RateConvention) -> Iterator[tuple[Config, Fraction]]:
    for p in positions:
        left, right = config[p], config[p + 1]
        if left > right:
            yield _swap(config, p), conv.rate_desc
        elif left < right:
            yield _swap(config, p), conv.rate_asc


def _boundary_moves(config: Config, conv: RateConvention) -> Iterator[tuple[Config, Fraction]]:
    label = config[0]
    if label < 0:
        yield (-label, *config[1:]), conv.rate_in
    elif label > 0:
        yield (-label, *config[1:]), conv.rate_out


def _collect(space: StateSpace, moves: Any) -> SparseGenerator:
    rates: dict[tuple[int, int], Fraction] = {}
    for i, config in enumerate(space):
        for target, rate in moves(config):
            if rate:
                j = space.index_of(target)
                rates[i, j] = rates.get((i, j), Fraction(0)) + rate
    generator = SparseGenerator(space, rates)
    logger.debug("Built %s generator with %d transitions", space.spec.model.value, len(rates))
    return generator


def build_msasep(L: int, n: int, q: Fraction, convention: RateConvention | None = None) -> SparseGenerator:
    """Multi-species ASEP on sites 1..L with closed boundaries."""
    if L < 2:
        raise ParameterError(f"The closed lattice needs L >= 2, got {L}")
    check_open_unit(q, "q")
    conv = convention or RateConvention.squared(q)
    space = enumerate_states(ModelSpec(Model.MSASEP, L, n))
    return _collect(space, lambda config: _bulk_moves(config, range(L - 1), conv))


def build_open(
    L: int, r: int, q: Fraction, Q: Fraction, convention: RateConvention | None = None
) -> SparseGenerator:
    """Open multi-species ASEP on sites 0..L, sign flips at site 0."""
    check_open_unit(q, "q")
    check_open_unit(Q, "Q")
    conv = convention or RateConvention.squared(q, Q)
    space = enumerate_states(ModelSpec(Model.OPEN, L, r))

    def moves(config: Config) -> Iterator[tuple[Config, Fraction]]:
        yield from _bulk_moves(config, range(L), conv)
        yield from _boundary_moves(config, conv)

    return _collect(space, moves)


def braided_rate(
    m: int,
    k1: int,
    k2: int,
    l2: int,
    q: Fraction,
    convention: BinomialConvention = BinomialConvention.STANDARD,
) -> Fraction:
    """Probability that the bond (k1, k2) turns into (k1 + k2 - l2, l2).

    binom(k1, l2) (q^{2(m-k2)}; q^{-2})_{k1-l2} q^{2(m-k2-k1+l2) l2}.
    Off the diagonal this is the jump rate.
    """
    l1 = k1 + k2 - l2
    if not all(0 <= value <= m for value in (k1, k2, l1, l2)) or l2 > k1:
        return Fraction(0)
    if q == 1:
        # only the full exchange survives
        return Fraction(1) if l2 == k1 else Fraction(0)
    return (
        q_binomial(k1, l2, q, convention)
        * q_pochhammer(q ** (2 * (m - k2)), q**-2, k1 - l2)
        * q ** (2 * (m - k2 - k1 + l2) * l2)
    )


class RateSource(str, Enum):
    CLOSED_FORM = "closed_form"
    FUSION_ORACLE = "fusion_oracle"


class ClosedFormRates:
    def __init__(self, m: int, q: Fraction, convention: BinomialConvention = BinomialConvention.STANDARD) -> None:
        self.m = m
        self.q = q
        self.convention = convention

    def probability(self, k1: int, k2: int, l2: int) -> Fraction:
        return braided_rate(self.m, k1, k2, l2, self.q, self.convention)


class FusionOracleRates:
    def __init__(self, m: int, q: Fraction) -> None:
        self.m = m
        self.q = q

    def probability(self, k1: int, k2: int, l2: int) -> Fraction:
        return fused_bond_probability(self.m, k1, k2, l2, self.q)


def bond_rates(m: int, q: Fraction, source: RateSource = RateSource.CLOSED_FORM) -> BondRatesAPI:
    if source == RateSource.FUSION_ORACLE:
        return FusionOracleRates(m, q)
    return ClosedFormRates(m, q)


def bond_table(rates: BondRatesAPI) -> dict[tuple[int, int], list[tuple[int, int, Fraction]]]:
    """Off-diagonal moves (l1, l2, rate) of every bond state (k1, k2)."""
    m = rates.m
    table: dict[tuple[int, int], list[tuple[int, int, Fraction]]] = {}
    for k1 in range(m + 1):
        for k2 in range(m + 1):
            moves = []
            for l2 in range(m + 1):
                l1 = k1 + k2 - l2
                if l2 == k2 or not 0 <= l1 <= m:
                    continue
                rate = rates.probability(k1, k2, l2)
                if rate:
                    moves.append((l1, l2, rate))
            table[k1, k2] = moves
    return table


def build_braided(
    L: int, m: int, q: Fraction, source: RateSource = RateSource.CLOSED_FORM
) -> SparseGenerator:
    """Braided ASEP on sites 1..L, up to m particles per site."""
    if L < 2:
        raise ParameterError(f"The braided lattice needs L >= 2, got {L}")
    check_open_unit(q, "q")
    space = enumerate_states(ModelSpec(Model.BRAIDED, L, m))
    table = bond_table(bond_rates(m, q, source))

    def moves(config: Config) -> Iterator[tuple[Config, Fraction]]:
        for p in range(L - 1):
            for l1, l2, rate in table[config[p], config[p + 1]]:
                target = list(config)
                target[p], target[p + 1] = l1, l2
                yield tuple(target), rate

    return _collect(space, moves)


def build_generator(
    spec: ModelSpec,
    q: Fraction,
    Q: Fraction | None = None,
    source: RateSource = RateSource.CLOSED_FORM,
) -> SparseGenerator:
    """Dispatch on the model of `spec`."""
    if spec.model == Model.MSASEP:
        return build_msasep(spec.L, spec.species, q)
    if spec.model == Model.OPEN:
        if Q is None:
            raise ParameterError("The open model needs the boundary parameter Q")
        return build_open(spec.L, spec.species, q, Q)
    return build_braided(spec.L, spec.species, q, source)
