"""
Symmetry of the open ASEP coming from the coideal subalgebra.

Operators act on column vectors over (C^3)^{L+1}, one leg per site
0..L, basis u_{-1}, u_0, u_1 per leg. The tensor index of a basis
vector equals the index of its configuration in the open state space.

The vacuum (all labels 0) is an eigenvector of the Hecke Hamiltonian H,
S = Delta^{(L)}(f_{1/2}) commutes with H, and the coefficients of
S^d applied to the vacuum give the ground-state transform G turning
H into the open ASEP generator.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .api import Config, Model, ModelSpec
from .common import RationalMatrix, kron_all
from .errors import GroundStateError, ParameterError
from .hecke import commutator, embed, hecke_type_b_boundary, hecke_type_b_bulk
from .qnum import q_factorial, q_int
from .states import StateSpace, enumerate_states, right_count, species_sites

logger = logging.getLogger(__name__)

Vector = dict[int, Fraction]

# leg positions of the labels -1, 0, 1
MINUS, ZERO, PLUS = 0, 1, 2


@dataclass(frozen=True)
class LocalQOperators:
    """Natural representation on C^3 at a rational q."""

    E_minus: RationalMatrix  # E_{-1/2}: u_0 -> u_{-1}
    E_plus: RationalMatrix  # E_{1/2}: u_1 -> u_0
    F_plus: RationalMatrix  # F_{1/2}: u_0 -> u_1
    F_minus: RationalMatrix  # F_{-1/2}: u_{-1} -> u_0
    K_minus: RationalMatrix
    K_minus_inv: RationalMatrix
    K_plus: RationalMatrix
    K_plus_inv: RationalMatrix
    k_half: RationalMatrix  # K_{1/2} K_{-1/2}^{-1}
    f_half: RationalMatrix  # E_{-1/2} + Q K_{-1/2}^{-1} F_{1/2}


def _unit(out: int, into: int) -> RationalMatrix:
    return RationalMatrix(3, entries={(out, into): 1})


def local_operators(q: Fraction, Q: Fraction) -> LocalQOperators:
    K_minus = RationalMatrix.diagonal([q, 1 / q, 1])
    K_minus_inv = RationalMatrix.diagonal([1 / q, q, 1])
    K_plus = RationalMatrix.diagonal([1, q, 1 / q])
    K_plus_inv = RationalMatrix.diagonal([1, 1 / q, q])
    E_minus = _unit(MINUS, ZERO)
    F_plus = _unit(PLUS, ZERO)
    return LocalQOperators(
        E_minus=E_minus,
        E_plus=_unit(ZERO, PLUS),
        F_plus=F_plus,
        F_minus=_unit(ZERO, MINUS),
        K_minus=K_minus,
        K_minus_inv=K_minus_inv,
        K_plus=K_plus,
        K_plus_inv=K_plus_inv,
        k_half=K_plus @ K_minus_inv,
        f_half=E_minus + (K_minus_inv @ F_plus) * Q,
    )


@dataclass(frozen=True)
class AOperators:
    a0: RationalMatrix
    plus: dict[int, RationalMatrix]  # a_j^+ for j = 1..L
    minus: dict[int, RationalMatrix]  # a_j^- for j = 1..L

    def total(self) -> RationalMatrix:
        """Delta^{(L)}(f_{1/2}) = a_0 + sum a_y^+ + sum a_x^-."""
        result = self.a0
        for op in (*self.plus.values(), *self.minus.values()):
            result = result + op
        return result


def _check_size(L: int) -> None:
    if L < 1:
        raise ParameterError(f"Need L >= 1, got {L}")
    # the operators live on the open state space, reuse its cap
    enumerate_states(ModelSpec(Model.OPEN, L, 1))


@lru_cache(maxsize=16)
def build_a_operators(L: int, q: Fraction, Q: Fraction) -> AOperators:
    _check_size(L)
    ops = local_operators(q, Q)
    identity = RationalMatrix.identity(3)
    a0 = kron_all([ops.f_half, *[ops.K_minus_inv] * L])
    plus = {}
    minus = {}
    for j in range(1, L + 1):
        tail = [ops.K_minus_inv] * (L - j)
        plus[j] = kron_all([*[identity] * j, ops.E_minus, *tail])
        minus[j] = kron_all([*[ops.k_half] * j, ops.K_minus_inv @ ops.F_plus, *tail]) * Q
    return AOperators(a0=a0, plus=plus, minus=minus)


def symmetry(L: int, q: Fraction, Q: Fraction) -> RationalMatrix:
    return build_a_operators(L, q, Q).total()


def check_a_relations(L: int, q: Fraction, Q: Fraction) -> bool:
    """The six q^2-commutation rules for l < j and nilpotency of every a."""
    a = build_a_operators(L, q, Q)
    q2 = q**2

    def q_commutes(x: RationalMatrix, y: RationalMatrix) -> bool:
        return x @ y == (y @ x) * q2

    for l, j in itertools.combinations(range(1, L + 1), 2):
        rules = [
            q_commutes(a.plus[j], a.plus[l]),
            q_commutes(a.minus[l], a.minus[j]),
            q_commutes(a.plus[l], a.minus[j]),
            q_commutes(a.plus[j], a.minus[l]),
        ]
        if not all(rules):
            logger.debug("a-operator rule fails for l=%d, j=%d: %s", l, j, rules)
            return False
    for j in range(1, L + 1):
        if not (q_commutes(a.plus[j], a.a0) and q_commutes(a.a0, a.minus[j])):
            logger.debug("a_0 rule fails for j=%d", j)
            return False
    return all((op @ op).is_zero() for op in (a.a0, *a.plus.values(), *a.minus.values()))


def build_hamiltonian(L: int, q: Fraction, Q: Fraction) -> RationalMatrix:
    """Q T_0 on site 0 plus q T_x on sites (x-1, x), symmetric forms."""
    legs = L + 1
    bulk = hecke_type_b_bulk(1, q) * q
    result = embed(hecke_type_b_boundary(1, Q) * Q, 1, legs, 3)
    for x in range(1, L + 1):
        result = result + embed(bulk, x, legs, 3)
    return result


def vacuum_index(L: int) -> int:
    return enumerate_states(ModelSpec(Model.OPEN, L, 1)).index_of((0,) * (L + 1))


def check_symmetry_commutation(L: int, q: Fraction, Q: Fraction) -> bool:
    """[H, Delta^{(L)}(f_{1/2})] == 0."""
    return commutator(build_hamiltonian(L, q, Q), symmetry(L, q, Q)).is_zero()


def expand_symmetry_power(L: int, d: int, q: Fraction, Q: Fraction) -> RationalMatrix:
    """([d]_{q^2}!)^{-1} S^d."""
    if not 0 <= d <= 2 * (L + 1):
        raise ParameterError(f"Power d={d} outside of 0..{2 * (L + 1)}")
    s = symmetry(L, q, Q)
    result = RationalMatrix.identity(s.n_rows)
    for _ in range(d):
        result = result @ s
    return result * (1 / q_factorial(d, q))


def _apply_word(word: list[RationalMatrix], vector: Vector) -> Vector:
    # rightmost operator acts first
    for op in reversed(word):
        vector = op.apply(vector)
    return vector


def ordered_products(L: int, d: int, q: Fraction, Q: Fraction) -> Vector:
    """Sum over particle sets of a^+_{y_k}..a^+_{y_1} [a_0] a^-_{x_1}..a^-_{x_j} on the vacuum.

    Sites of the a^- and a^+ factors are disjoint, a^- ascending to the right.
    """
    a = build_a_operators(L, q, Q)
    vacuum = {vacuum_index(L): Fraction(1)}
    total: Vector = {}
    sites = range(1, L + 1)
    for with_a0 in (False, True):
        rest = d - int(with_a0)
        for n_minus in range(rest + 1):
            for xs in itertools.combinations(sites, n_minus):
                free = [y for y in sites if y not in xs]
                for ys in itertools.combinations(free, rest - n_minus):
                    word = [a.plus[y] for y in reversed(ys)]
                    if with_a0:
                        word.append(a.a0)
                    word += [a.minus[x] for x in xs]
                    for index, value in _apply_word(word, vacuum).items():
                        total[index] = total.get(index, Fraction(0)) + value
    return {index: value for index, value in total.items() if value}


def check_power_expansion(L: int, d: int, q: Fraction, Q: Fraction) -> bool:
    """([d]!)^{-1} S^d on the vacuum equals q^{-d(d-1)} times the ordered products."""
    column = expand_symmetry_power(L, d, q, Q).apply({vacuum_index(L): Fraction(1)})
    factor = q ** (-d * (d - 1))
    expected = {i: v * factor for i, v in ordered_products(L, d, q, Q).items()}
    return column == expected


def particle_count(config: Config) -> int:
    return sum(1 for label in config if label)


def g_formula(config: Config, q: Fraction, Q: Fraction) -> Fraction:
    """G(b, b) as a product over the ordered particle positions, zeta_0 for site 0."""
    L = len(config) - 1
    xs = species_sites(config[1:], 1, origin=1)
    ys = species_sites(config[1:], -1, origin=1)
    d1 = len(xs)
    value = Fraction(1)
    for x in xs:
        value *= Q * q ** (L + x - right_count(config, x, 1, origin=0))
    for y in ys:
        value *= q ** (L - y - right_count(config, y, 1, origin=0))
    zeta0 = {1: Q * q ** (L - d1), 0: Fraction(1), -1: q ** (L - d1)}[config[0]]
    return value * zeta0


def g_single_product(config: Config, q: Fraction, Q: Fraction) -> Fraction:
    """Q^{d_1} q^{L d} prod_x q^{x - N_x} prod_y q^{-y - N_y}, site 0 included."""
    L = len(config) - 1
    plus = species_sites(config, 1, origin=0)
    minus = species_sites(config, -1, origin=0)
    value = Q ** len(plus) * q ** (L * particle_count(config))
    for x in plus:
        value *= q ** (x - right_count(config, x, 1, origin=0))
    for y in minus:
        value *= q ** (-y - right_count(config, y, 1, origin=0))
    return value


def g_from_symmetry(L: int, q: Fraction, Q: Fraction) -> list[Fraction]:
    """Coefficient of every basis vector in ([d]!)^{-1} S^d on the vacuum.

    Each configuration shows up for exactly one d, its particle count.
    Raises if a coefficient is missing or appears twice.
    """
    space = enumerate_states(ModelSpec(Model.OPEN, L, 1))
    s = symmetry(L, q, Q)
    coefficients: dict[int, Fraction] = {}
    vector: Vector = {vacuum_index(L): Fraction(1)}
    for d in range(L + 2):
        if d:
            vector = {i: v / q_int(d, q) for i, v in s.apply(vector).items()}
        for index, value in vector.items():
            if index in coefficients:
                raise GroundStateError(f"{space.config_of(index)} appears in two powers of S")
            coefficients[index] = value
    missing = [space.config_of(i) for i in range(len(space)) if i not in coefficients]
    if missing:
        raise GroundStateError(f"Configurations never reached from the vacuum: {missing[:3]}")
    return [coefficients[i] for i in range(len(space))]


@dataclass(frozen=True)
class GroundFrame:
    space: StateSpace
    hamiltonian: RationalMatrix
    vacuum: int
    eigenvalue: Fraction
    g: list[Fraction]  # diagonal of G, product-formula normalisation

    def generator(self) -> RationalMatrix:
        """G^{-1} (H - lambda) G."""
        size = len(self.space)
        shifted = self.hamiltonian - RationalMatrix.identity(size) * self.eigenvalue
        result = RationalMatrix(size)
        for i, j, value in shifted.items():
            result[i, j] = value * self.g[j] / self.g[i]
        return result


def build_ground_frame(L: int, q: Fraction, Q: Fraction) -> GroundFrame:
    """H, its vacuum eigenvalue and G, cross-checked against the symmetry."""
    space = enumerate_states(ModelSpec(Model.OPEN, L, 1))
    hamiltonian = build_hamiltonian(L, q, Q)
    vacuum = vacuum_index(L)
    image = hamiltonian.apply({vacuum: Fraction(1)})
    eigenvalue = image.get(vacuum, Fraction(0))
    if image != {vacuum: eigenvalue}:
        raise GroundStateError("The vacuum is not an eigenvector of H")

    g = [g_formula(config, q, Q) for config in space]
    from_symmetry = g_from_symmetry(L, q, Q)
    for i, config in enumerate(space):
        d = particle_count(config)
        if from_symmetry[i] * q ** (d * (d - 1)) != g[i]:
            raise GroundStateError(
                f"G from S^d disagrees with the product formula at {config}"
            )
    logger.debug("Ground frame for L=%d: eigenvalue %s", L, eigenvalue)
    return GroundFrame(space, hamiltonian, vacuum, eigenvalue, g)


def reversible_measure_open(L: int, q: Fraction, Q: Fraction) -> list[Fraction]:
    """pi(b) = G(b, b)^2, in state-space order."""
    return [value**2 for value in build_ground_frame(L, q, Q).g]


def symmetry_series(L: int, q: Fraction, Q: Fraction) -> RationalMatrix:
    """sum_d ([d]!)^{-1} S^d, finite since S^{L+2} = 0."""
    s = symmetry(L, q, Q)
    term = RationalMatrix.identity(s.n_rows)
    total = term
    for d in range(1, L + 2):
        term = (term @ s) * (1 / q_int(d, q))
        total = total + term
    return total
