from __future__ import annotations

from fractions import Fraction

import pytest

from mdlab.lib.common import RationalMatrix
from mdlab.lib.errors import DimensionMismatch, ParameterError
from mdlab.lib.hecke import (
    braid_pair,
    check_braid_relation,
    check_hecke_quadratic,
    check_type_b_mixed,
    commutator,
    embed,
    hecke_type_b_boundary,
    hecke_type_b_bulk,
    r_matrix_two_param,
    r_matrix_type_a,
    s_check,
)

from .common import Q, q


def test_embed_shapes():
    local = s_check(q)
    assert embed(local, 1, 4, 2).shape == (16, 16)
    assert embed(local, 3, 4, 2) == RationalMatrix.identity(4).kron(local)
    one_site = RationalMatrix.diagonal([1, 2, 3])
    assert embed(one_site, 2, 2, 3) == RationalMatrix.identity(3).kron(one_site)


def test_embed_rejects():
    with pytest.raises(DimensionMismatch):
        embed(s_check(q), 4, 4, 2)
    with pytest.raises(DimensionMismatch):
        embed(RationalMatrix(5), 1, 3, 2)


def test_s_check_is_stochastic():
    assert s_check(q).row_sums() == [1, 1, 1, 1]
    assert s_check(q)[1, 2] == q**2


@pytest.mark.parametrize("n", [1, 2])
def test_type_a(n):
    t = r_matrix_type_a(n, q) * q
    assert check_hecke_quadratic(t, q - 1, q)
    assert check_braid_relation(*braid_pair(r_matrix_type_a(n, q), n + 1))


def test_type_a_needs_species():
    with pytest.raises(ParameterError):
        r_matrix_type_a(0, q)


@pytest.mark.parametrize("r,s", [(Fraction(1, 3), Fraction(3, 4)), (Fraction(2), Fraction(1, 5))])
def test_two_parameter(r, s):
    assert check_hecke_quadratic(r_matrix_two_param(2, r, s) * s, s - r, r * s)
    assert check_braid_relation(*braid_pair(r_matrix_two_param(1, r, s), 2))


def test_two_parameter_rejects_zero():
    with pytest.raises(ParameterError):
        r_matrix_two_param(1, Fraction(0), q)


@pytest.mark.parametrize("stochastic", [False, True])
def test_type_b(stochastic):
    bulk = hecke_type_b_bulk(1, q, stochastic)
    boundary = hecke_type_b_boundary(1, Q, stochastic)
    assert check_hecke_quadratic(bulk, 1 / q - q, Fraction(1))
    assert check_hecke_quadratic(boundary, 1 / Q - Q, Fraction(1))
    assert check_braid_relation(*braid_pair(bulk, 3))
    assert check_type_b_mixed(embed(boundary, 1, 2, 3), bulk)


def test_type_b_symmetric_form():
    bulk = hecke_type_b_bulk(2, q)
    assert bulk == bulk.T
    boundary = hecke_type_b_boundary(2, Q)
    assert boundary == boundary.T


def test_type_b_stochastic_rates():
    assert (hecke_type_b_bulk(1, q, stochastic=True) * q).row_sums() == [1] * 9
    boundary = hecke_type_b_boundary(1, Q, stochastic=True) * Q
    assert boundary.row_sums() == [1, 1, 1]
    # -1 -> 1 with Q^2, 1 -> -1 with 1
    assert boundary[0, 2] == Q**2
    assert boundary[2, 0] == 1


def test_wrong_quadratic_fails():
    assert not check_hecke_quadratic(s_check(q), q, q)


def test_commutator():
    a = RationalMatrix.diagonal([1, 2])
    b = RationalMatrix.from_dense([[0, 1], [0, 0]])
    assert commutator(a, a).is_zero()
    assert commutator(a, b) == RationalMatrix.from_dense([[0, -1], [0, 0]])
    with pytest.raises(DimensionMismatch):
        commutator(a, RationalMatrix.identity(3))


def test_format_grid():
    lines = s_check(q).format().splitlines()
    assert lines[0] == "[[  1,   0,   0,   0],"
    assert lines[1] == " [  0, 3/4, 1/4,   0],"
    assert lines[-1] == " [  0,   0,   0,   1]]"
