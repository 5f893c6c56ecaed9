"""
R-matrices and Hecke algebra generators of types A and B.

Entries follow the E_{i,j} displays literally: E_{i,j} is the matrix
unit at row i, column j. Read as transition matrices, rows are sources
and columns targets. Two-site matrices act on C^d (x) C^d with the basis
|a> (x) |b> at index a_pos * d + b_pos, first site most significant.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from .common import RationalMatrix
from .errors import DimensionMismatch, ParameterError

logger = logging.getLogger(__name__)


def _two_site(dim: int) -> RationalMatrix:
    return RationalMatrix(dim * dim)


def embed(local: RationalMatrix, position: int, legs: int, local_dim: int) -> RationalMatrix:
    """Place a one- or two-site matrix on `legs` tensor factors.

    `position` is the 1-based first leg the local matrix acts on.
    """
    span = 1
    while local_dim**span < local.n_rows:
        span += 1
    if local_dim**span != local.n_rows or not local.n_rows == local.n_cols:
        raise DimensionMismatch(
            f"A {local.shape} matrix does not act on powers of C^{local_dim}"
        )
    if not 1 <= position <= legs - span + 1:
        raise DimensionMismatch(f"Cannot place {span} legs at {position} out of {legs}")
    before = RationalMatrix.identity(local_dim ** (position - 1))
    after = RationalMatrix.identity(local_dim ** (legs - position - span + 1))
    return before.kron(local).kron(after)


def r_matrix_two_param(n: int, r: Fraction, s: Fraction) -> RationalMatrix:
    """r sum E_ji(x)E_ij + s^-1 sum E_ij(x)E_ji + (1 - r/s) sum E_jj(x)E_ii + sum E_ii(x)E_ii.

    Sums run over i < j in 0..n. `s` times this matrix satisfies
    T^2 = (s - r) T + r s.
    """
    if r == 0 or s == 0:
        raise ParameterError("Both r and s must be nonzero")
    dim = n + 1
    result = _two_site(dim)
    for i in range(dim):
        result[i * dim + i, i * dim + i] = 1
        for j in range(i + 1, dim):
            result[j * dim + i, i * dim + j] = r
            result[i * dim + j, j * dim + i] = 1 / Fraction(s)
            result[j * dim + i, j * dim + i] = 1 - Fraction(r) / s
    return result


def r_matrix_type_a(n: int, q: Fraction) -> RationalMatrix:
    """One-parameter R. `q` times it satisfies T^2 = (q - 1) T + q."""
    if n < 1:
        raise ParameterError(f"Need at least one species, got n={n}")
    return r_matrix_two_param(n, Fraction(1), q)


def _label_index(label: int, r_species: int) -> int:
    return label + r_species


def hecke_type_b_bulk(r_species: int, q: Fraction, stochastic: bool = False) -> RationalMatrix:
    """Bulk generator T_i over labels -r..r, (T - q^-1)(T + q) = 0.

    The plain form is symmetric. With `stochastic=True` the diagonally
    conjugated form is returned, for which q T is row-stochastic with
    rates q^2 (larger label moving right) and 1.
    """
    if r_species < 1:
        raise ParameterError(f"Need r >= 1, got {r_species}")
    dim = 2 * r_species + 1
    result = _two_site(dim)
    swap_down, swap_up = (q, 1 / q) if stochastic else (Fraction(1), Fraction(1))
    for i in range(dim):
        result[i * dim + i, i * dim + i] = 1 / q
        for j in range(i + 1, dim):
            result[j * dim + i, i * dim + j] = swap_down
            result[j * dim + i, j * dim + i] = 1 / q - q
            result[i * dim + j, j * dim + i] = swap_up
    return result


def hecke_type_b_boundary(r_species: int, Q: Fraction, stochastic: bool = False) -> RationalMatrix:
    """Boundary generator T_0 on the first site, (T_0 - Q^-1)(T_0 + Q) = 0.

    With `stochastic=True`, Q T_0 flips -k -> k with probability Q^2
    and k -> -k with probability 1.
    """
    if r_species < 1:
        raise ParameterError(f"Need r >= 1, got {r_species}")
    dim = 2 * r_species + 1
    result = RationalMatrix(dim)
    flip_in, flip_out = (Q, 1 / Q) if stochastic else (Fraction(1), Fraction(1))
    result[_label_index(0, r_species), _label_index(0, r_species)] = 1 / Q
    for k in range(1, r_species + 1):
        neg, pos = _label_index(-k, r_species), _label_index(k, r_species)
        result[neg, pos] = flip_in
        result[neg, neg] = 1 / Q - Q
        result[pos, neg] = flip_out
    return result


def s_check(q: Fraction) -> RationalMatrix:
    """The 4x4 stochastic matrix on C^2 (x) C^2, basis 00, 01, 10, 11."""
    return RationalMatrix.from_dense(
        [
            [1, 0, 0, 0],
            [0, 1 - q**2, q**2, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
        ]
    )


def _require_square_pair(a: RationalMatrix, b: RationalMatrix) -> None:
    if a.shape != b.shape or a.n_rows != a.n_cols:
        raise DimensionMismatch(f"Need equal square matrices, got {a.shape} and {b.shape}")


def braid_pair(local: RationalMatrix, local_dim: int) -> tuple[RationalMatrix, RationalMatrix]:
    """A two-site matrix on legs (1,2) and on legs (2,3) of three legs."""
    return embed(local, 1, 3, local_dim), embed(local, 2, 3, local_dim)


def check_braid_relation(a: RationalMatrix, b: RationalMatrix) -> bool:
    """ABA == BAB for A on (i, i+1) and B on (i+1, i+2)."""
    _require_square_pair(a, b)
    return a @ b @ a == b @ a @ b


def check_hecke_quadratic(a: RationalMatrix, linear: Fraction, constant: Fraction) -> bool:
    """A^2 == linear * A + constant * Id."""
    if a.n_rows != a.n_cols:
        raise DimensionMismatch(f"Need a square matrix, got {a.shape}")
    return a @ a == a * linear + RationalMatrix.identity(a.n_rows) * constant


def check_type_b_mixed(t0: RationalMatrix, t1: RationalMatrix) -> bool:
    """T0 T1 T0 T1 == T1 T0 T1 T0."""
    _require_square_pair(t0, t1)
    return t0 @ t1 @ t0 @ t1 == t1 @ t0 @ t1 @ t0


def commutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    _require_square_pair(a, b)
    return a @ b - b @ a
