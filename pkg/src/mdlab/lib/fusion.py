"""
Fused bond matrix of the braided ASEP and its two independent
descriptions: the product of m^2 embedded 4x4 stochastic matrices
sandwiched between fission and fusion maps, and the auxiliary
discrete-time particle process.

The fused matrix lives on pairs of block occupancies (a, b) where `a`
counts particles on legs 1..m and `b` on legs m+1..2m. The braided
generator runs the other way round along the lattice, see
`reflect_bond`.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .. import settings
from .common import RationalMatrix
from .errors import ParameterError
from .hecke import check_braid_relation, embed, s_check

logger = logging.getLogger(__name__)


def pair_index(a: int, b: int, m: int) -> int:
    return a * (m + 1) + b


def _check_m(m: int) -> None:
    if m < 1:
        raise ParameterError(f"Need m >= 1, got m={m}")
    leg_cap = int(settings.get("fusion_leg_cap"))
    if 2 * m > leg_cap:
        raise ParameterError(f"m={m} needs {2 * m} tensor legs, the cap is {leg_cap}")


def _tensor_index(bits: tuple[int, ...]) -> int:
    # leg 1 is the most significant bit
    index = 0
    for bit in bits:
        index = 2 * index + bit
    return index


def fusion_map(m: int) -> RationalMatrix:
    """Phi: tensor basis of 2m legs -> block occupancy pairs."""
    _check_m(m)
    result = RationalMatrix(2 ** (2 * m), (m + 1) ** 2)
    for bits in itertools.product((0, 1), repeat=2 * m):
        result[_tensor_index(bits), pair_index(sum(bits[:m]), sum(bits[m:]), m)] = 1
    return result


def _block_placements(m: int, k: int, s: Fraction) -> list[tuple[tuple[int, ...], Fraction]]:
    """Placements of k particles on a block of m legs with normalised weights.

    A particle on block position `pos` (1-based) weighs s^(m - pos).
    """
    placements = []
    for positions in itertools.combinations(range(1, m + 1), k):
        bits = tuple(1 if pos in positions else 0 for pos in range(1, m + 1))
        placements.append((bits, s ** sum(m - pos for pos in positions)))
    total = sum(weight for _, weight in placements)
    return [(bits, weight / total) for bits, weight in placements if weight]


def fission_map(m: int, s: Fraction = Fraction(0)) -> RationalMatrix:
    """Lambda: block occupancy pairs -> probability vectors on 2m legs.

    `s = 0` is the deterministic fission, every block packed to its right end.
    """
    _check_m(m)
    if not 0 <= s <= 1:
        raise ParameterError(f"Fission parameter s must lie in [0, 1], got {s}")
    s = Fraction(s)
    result = RationalMatrix((m + 1) ** 2, 2 ** (2 * m))
    for a in range(m + 1):
        for b in range(m + 1):
            for left_bits, left_weight in _block_placements(m, a, s):
                for right_bits, right_weight in _block_placements(m, b, s):
                    result[pair_index(a, b, m), _tensor_index(left_bits + right_bits)] = (
                        left_weight * right_weight
                    )
    return result


def fused_word(m: int) -> list[int]:
    """Left legs of the embedded 4x4 matrices, in product order.

    Group t (t = 0..m-1) runs over legs m+t down to t+1;
    for m = 2 this is (2,3), (1,2), (3,4), (2,3).
    """
    return [leg for t in range(m) for leg in range(m + t, t, -1)]


def tensor_word_product(m: int, q: Fraction) -> RationalMatrix:
    """The ordered product of the m^2 embedded stochastic matrices."""
    _check_m(m)
    local = s_check(q)
    result = RationalMatrix.identity(2 ** (2 * m))
    for leg in fused_word(m):
        result = result @ embed(local, leg, 2 * m, 2)
    return result


@lru_cache(maxsize=32)
def fused_bond_matrix(m: int, q: Fraction, s: Fraction = Fraction(0)) -> RationalMatrix:
    """Lambda . (word product) . Phi, a stochastic matrix on occupancy pairs."""
    result = fission_map(m, s) @ tensor_word_product(m, q) @ fusion_map(m)
    logger.debug("Fused bond matrix for m=%d at q=%s has %d entries", m, q, result.nnz)
    return result


def reflect_bond(matrix: RationalMatrix, m: int) -> RationalMatrix:
    """Swap the two sites of a bond matrix: (a, b) -> (c, d) becomes (b, a) -> (d, c)."""
    size = m + 1
    result = RationalMatrix(matrix.n_rows, matrix.n_cols)
    for i, j, value in matrix.items():
        (a, b), (c, d) = divmod(i, size), divmod(j, size)
        result[pair_index(b, a, m), pair_index(d, c, m)] = value
    return result


def lattice_bond_matrix(m: int, q: Fraction, s: Fraction = Fraction(0)) -> RationalMatrix:
    """Fused bond matrix in lattice orientation, indexed by (eta_x, eta_{x+1})."""
    return reflect_bond(fused_bond_matrix(m, q, s), m)


def fused_bond_probability(m: int, k1: int, k2: int, l2: int, q: Fraction) -> Fraction:
    """Probability of the bond move (k1, k2) -> (k1 + k2 - l2, l2).

    `k1` is the occupancy of the left site, `l2` the new occupancy
    of the right site.
    """
    l1 = k1 + k2 - l2
    if not all(0 <= value <= m for value in (k1, k2, l1, l2)):
        return Fraction(0)
    return fused_bond_matrix(m, q)[pair_index(k2, k1, m), pair_index(l2, l1, m)]


def aux_process_distribution(m: int, k1: int, k2: int, q: Fraction) -> dict[int, Fraction]:
    """Law of the new right-site occupancy l2 from the auxiliary process.

    The k1 particles entering from the left site are updated one per
    time step. At step t, with s particles already on the right site,
    the particle draws a jump from `truncated_geometric` over the
    distance m - k2 - t + s + 1 it has room for. Only the full jump
    lands it on the right site.
    """
    if not (0 <= k1 <= m and 0 <= k2 <= m):
        raise ParameterError(f"Occupancies ({k1}, {k2}) outside of 0..{m}")
    law: dict[int, Fraction] = {0: Fraction(1)}
    for t in range(1, k1 + 1):
        step: dict[int, Fraction] = {}
        for s, weight in law.items():
            distance = m - k2 - t + s + 1
            for jump, p in truncated_geometric(distance, q).items():
                target = s + 1 if jump == distance else s
                step[target] = step.get(target, Fraction(0)) + weight * p
        law = step
    return {l2: p for l2, p in sorted(law.items()) if p}


def truncated_geometric(distance: int, q: Fraction) -> dict[int, Fraction]:
    """Jump length law with parameter q^2, truncated at `distance`.

    P(j) = q^(2j) (1 - q^2) for j < distance, P(distance) = q^(2 distance).
    """
    if distance < 0:
        raise ParameterError(f"Jump distance must be >= 0, got {distance}")
    law = {j: q ** (2 * j) * (1 - q**2) for j in range(distance)}
    law[distance] = q ** (2 * distance)
    return law


def _recurrence_holds(p: Callable[[int, int, int], Fraction], m: int, q: Fraction) -> bool:
    for k1 in range(1, m + 1):
        for k2 in range(m + 1):
            for l2 in range(k1 + 1):
                base = m - k2 - k1 + l2
                expected = q ** (2 * base) * p(k1 - 1, k2, l2 - 1) + (
                    1 - q ** (2 * (base + 1))
                ) * p(k1 - 1, k2, l2)
                if p(k1, k2, l2) != expected:
                    logger.debug("Recurrence fails at m=%d (%d, %d, %d)", m, k1, k2, l2)
                    return False
    return True


def check_rate_recurrence(m: int, q: Fraction) -> bool:
    """Both the closed-form rate and the auxiliary process obey the one-step recurrence."""
    # generators builds its fusion oracle on top of this module
    from .generators import braided_rate

    def closed(k1: int, k2: int, l2: int) -> Fraction:
        if l2 < 0 or k1 < 0:
            return Fraction(0)
        return braided_rate(m, k1, k2, l2, q)

    def aux(k1: int, k2: int, l2: int) -> Fraction:
        if l2 < 0 or k1 < 0:
            return Fraction(0)
        return aux_process_distribution(m, k1, k2, q).get(l2, Fraction(0))

    return _recurrence_holds(closed, m, q) and _recurrence_holds(aux, m, q)


def check_fused_braid(m: int, q: Fraction) -> bool:
    """Fused bond matrices on three fused sites satisfy the braid relation."""
    local = fused_bond_matrix(m, q)
    first = embed(local, 1, 3, m + 1)
    second = embed(local, 2, 3, m + 1)
    return check_braid_relation(first, second)
