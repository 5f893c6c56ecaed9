from __future__ import annotations

from fractions import Fraction

import pytest

from mdlab.lib.api import Model, ModelSpec
from mdlab.lib.coideal import (
    build_ground_frame,
    check_a_relations,
    check_power_expansion,
    check_symmetry_commutation,
    expand_symmetry_power,
    g_formula,
    g_from_symmetry,
    g_single_product,
    local_operators,
    particle_count,
    reversible_measure_open,
    symmetry,
    vacuum_index,
)
from mdlab.lib.common import RationalMatrix
from mdlab.lib.errors import ParameterError
from mdlab.lib.generators import build_open
from mdlab.lib.states import enumerate_states

from .common import Q, q


def test_local_operators():
    ops = local_operators(q, Q)
    assert ops.k_half == RationalMatrix.diagonal([1 / q, q**2, 1 / q])
    assert ops.f_half == RationalMatrix(3, entries={(0, 1): 1, (2, 1): Q})
    assert ops.K_minus @ ops.K_minus_inv == RationalMatrix.identity(3)
    assert ops.K_plus @ ops.K_plus_inv == RationalMatrix.identity(3)


@pytest.mark.parametrize("L", [1, 2])
def test_a_relations(L):
    assert check_a_relations(L, q, Q)


@pytest.mark.parametrize("L", [1, 2])
def test_symmetry_commutes(L):
    assert check_symmetry_commutation(L, q, Q)


def test_symmetry_is_nilpotent():
    s = symmetry(1, q, Q)
    power = RationalMatrix.identity(s.n_rows)
    for _ in range(3):
        power = power @ s
    assert power.is_zero()


def test_g_forms():
    for config in enumerate_states(ModelSpec(Model.OPEN, 2, 1)):
        assert g_formula(config, q, Q) == g_single_product(config, q, Q)
    assert g_formula((0, 0, 0), q, Q) == 1
    assert g_formula((1, 0), q, Q) == Q * q**1


def test_g_from_symmetry_covers_space():
    values = g_from_symmetry(2, q, Q)
    space = enumerate_states(ModelSpec(Model.OPEN, 2, 1))
    assert len(values) == len(space)
    assert values[vacuum_index(2)] == 1
    for config, value in zip(space, values):
        d = particle_count(config)
        assert value * q ** (d * (d - 1)) == g_formula(config, q, Q)


@pytest.mark.parametrize("L", [1, 2])
def test_ground_frame_gives_open_generator(L):
    frame = build_ground_frame(L, q, Q)
    assert frame.generator() == build_open(L, 1, q, Q).matrix
    assert frame.space.config_of(frame.vacuum) == (0,) * (L + 1)


def test_reversible_measure():
    pi = reversible_measure_open(1, q, Q)
    generator = build_open(1, 1, q, Q).matrix
    for i, j, rate in generator.items():
        if i != j:
            assert pi[i] * rate == pi[j] * generator[j, i]


@pytest.mark.parametrize("d", range(5))
def test_power_expansion(d):
    assert check_power_expansion(2, d, q, Q)


def test_power_range():
    with pytest.raises(ParameterError):
        expand_symmetry_power(1, 5, q, Q)
    assert expand_symmetry_power(1, 0, q, Q) == RationalMatrix.identity(9)


def test_size_check():
    with pytest.raises(ParameterError):
        check_a_relations(0, q, Q)
