from __future__ import annotations

from fractions import Fraction

import pytest

from mdlab.lib.api import Model, ModelSpec
from mdlab.lib.errors import DimensionMismatch, ParameterError
from mdlab.lib.duality import (
    MsasepReading,
    block_ratios,
    check_block_proportional,
    duality_braided,
    duality_matrix,
    duality_msasep,
    duality_msasep_left,
    duality_open,
    duality_open_from_symmetry,
    functional_for,
    markov_residual,
    resolve_msasep_reading,
    tabulate,
)
from mdlab.lib.generators import build_braided, build_msasep, build_open
from mdlab.lib.qnum import q_binomial
from mdlab.lib.states import enumerate_states, sector

from .common import ETA, ETA_HAT, XI, XI_HAT, Q, q


def test_open_worked_example():
    assert duality_open(ETA_HAT, XI, q, Q) == Q**-4 * q**-10 == 82944
    assert duality_open(ETA, XI_HAT, q, Q) == Q**-2 * q**-10
    generator = build_open(3, 1, q, Q)
    left = generator.rate(ETA, ETA_HAT) * duality_open(ETA_HAT, XI, q, Q)
    right = duality_open(ETA, XI_HAT, q, Q) * generator.rate(XI, XI_HAT)
    assert left == right == Q**-2 * q**-10


def test_open_support():
    # xi asks for a +1 where eta has a -1
    assert duality_open(ETA, XI, q, Q) == 0
    assert duality_open((0, 0), (0, 0), q, Q) == 1


def test_open_rejects_more_species():
    with pytest.raises(ParameterError):
        duality_open((2, 0), (0, 0), q, Q)


def test_msasep_values():
    assert duality_msasep((1, 0), (1, 0), q) == 4
    assert duality_msasep((1, 1), (1, 0), q) == 16
    assert duality_msasep((0, 1), (1, 0), q) == 0
    assert duality_msasep((2, 0), (1, 0), q) == 4
    assert duality_msasep((0, 0), (0, 0), q) == 1


def test_msasep_left_variant():
    assert duality_msasep_left((1, 1), (0, 1), q) == q**-4 * q**2
    spec = ModelSpec(Model.MSASEP, 3, 2)
    left = tabulate(enumerate_states(spec), lambda eta, xi: duality_msasep_left(eta, xi, q))
    assert check_block_proportional(duality_matrix(spec, q), left)


def test_braided_values():
    assert duality_braided((3, 0), (2, 0), q, 3) == q**-12 == 4096
    assert duality_braided((3, 0), (2, 0), q, 4) == (
        q_binomial(3, 2, q) / q_binomial(4, 2, q) * q**-16
    )
    assert duality_braided((1, 0), (2, 0), q, 2) == 0


@pytest.mark.parametrize(
    "generator,spec,boundary",
    [
        (lambda: build_msasep(3, 2, q), ModelSpec(Model.MSASEP, 3, 2), None),
        (lambda: build_open(2, 1, q, Q), ModelSpec(Model.OPEN, 2, 1), Q),
        (lambda: build_braided(2, 2, q), ModelSpec(Model.BRAIDED, 2, 2), None),
    ],
)
def test_self_duality(generator, spec, boundary):
    duality = duality_matrix(spec, q, boundary)
    assert markov_residual(generator().matrix, duality.matrix).is_zero()


def test_reading():
    winner, losers = resolve_msasep_reading()
    assert winner == MsasepReading.ETA
    assert losers == [MsasepReading.XI]


@pytest.mark.parametrize("L", [1, 2])
def test_symmetry_duality(L):
    from_symmetry = duality_open_from_symmetry(L, q, Q)
    direct = duality_matrix(ModelSpec(Model.OPEN, L, 1), q, Q)
    assert markov_residual(build_open(L, 1, q, Q).matrix, from_symmetry.matrix).is_zero()
    assert (from_symmetry.matrix - direct.matrix).is_zero()
    vacuum = (0,) * (L + 1)
    assert from_symmetry.value(vacuum, vacuum) == 1
    assert from_symmetry.value((1,) * (L + 1), vacuum) == 1
    assert from_symmetry.value(vacuum, (1,) + (0,) * L) == 0


def test_left_variant_ratio():
    spec = ModelSpec(Model.MSASEP, 2, 1)
    left = tabulate(enumerate_states(spec), lambda eta, xi: duality_msasep_left(eta, xi, q))
    ratios = block_ratios(duality_matrix(spec, q), left)
    assert ratios is not None
    key = (sector(Model.MSASEP, (1, 1)), sector(Model.MSASEP, (0, 1)))
    assert ratios[key] == 4


def test_value_lookup():
    duality = duality_matrix(ModelSpec(Model.MSASEP, 2, 1), q)
    assert duality.value((1, 1), (1, 0)) == 16


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        duality_msasep((1, 0, 0), (1, 0), q)
    with pytest.raises(DimensionMismatch):
        markov_residual(build_msasep(2, 1, q).matrix, duality_matrix(ModelSpec(Model.MSASEP, 3, 1), q).matrix)


def test_functional_for():
    with pytest.raises(ParameterError):
        functional_for(ModelSpec(Model.OPEN, 2, 2), q, Q)
    with pytest.raises(ParameterError):
        functional_for(ModelSpec(Model.OPEN, 2, 1), q)
    braided = functional_for(ModelSpec(Model.BRAIDED, 1, 3), q)
    assert braided((3,), (2,)) == q**-12 * Fraction(1)
