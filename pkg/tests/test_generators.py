from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdlab.lib.appendix import bond_generator_fixture
from mdlab.lib.api import Model, ModelSpec
from mdlab.lib.duality import duality_matrix, markov_residual
from mdlab.lib.errors import ParameterError
from mdlab.lib.fusion import reflect_bond
from mdlab.lib.generators import (
    ClosedFormRates,
    FusionOracleRates,
    RateConvention,
    RateSource,
    bond_table,
    braided_rate,
    build_braided,
    build_generator,
    build_msasep,
    build_open,
)
from mdlab.lib.states import enumerate_states, sector

from .common import ETA, ETA_HAT, Q, q


def test_msasep_two_sites():
    gen = build_msasep(L=2, n=1, q=q)
    assert gen.rate((1, 0), (0, 1)) == Fraction(1, 4)
    assert gen.rate((0, 1), (1, 0)) == 1
    assert gen.rate((1, 0), (1, 0)) == Fraction(-1, 4)
    assert gen.transitions((1, 1)) == {}


def test_msasep_species_order():
    gen = build_msasep(L=3, n=2, q=q)
    # larger label on the left swaps at q^2
    assert gen.rate((2, 1, 0), (1, 2, 0)) == q**2
    assert gen.rate((1, 2, 0), (2, 1, 0)) == 1
    assert gen.transitions((2, 1, 0)) == {(1, 2, 0): q**2, (2, 0, 1): q**2}


@pytest.mark.parametrize(
    "gen",
    [
        build_msasep(3, 2, q),
        build_open(2, 1, q, Q),
        build_open(1, 2, q, Q),
        build_braided(3, 2, q),
    ],
)
def test_rows_sum_to_zero(gen):
    assert all(total == 0 for total in gen.row_sums())
    assert all(rate > 0 for _, _, rate in gen.off_diagonal())


def test_msasep_needs_two_sites():
    with pytest.raises(ParameterError):
        build_msasep(1, 1, q)
    with pytest.raises(ParameterError):
        build_msasep(3, 1, Fraction(1))


def test_linear_convention():
    gen = build_msasep(2, 1, q, RateConvention.linear(q))
    assert gen.rate((1, 0), (0, 1)) == q
    conv = RateConvention.linear(q, Q)
    assert (conv.rate_asc, conv.rate_desc, conv.rate_in, conv.rate_out) == (1, q, Q, 1)
    assert RateConvention.squared(q, Q).rate_in == Q**2


def test_open_boundary_and_bulk():
    gen = build_open(3, 1, q, Q)
    assert gen.rate(ETA, ETA_HAT) == Q**2
    assert gen.rate(ETA_HAT, ETA) == 1
    assert gen.rate((0, 1, -1, 0), (0, -1, 1, 0)) == q**2
    assert gen.rate((0, -1, 1, 0), (0, 1, -1, 0)) == 1
    assert gen.transitions((0, 0, 0, 0)) == {}


def test_open_multi_species_boundary():
    gen = build_open(1, 2, q, Q)
    assert gen.rate((-2, 0), (2, 0)) == Q**2
    assert gen.rate((2, 0), (-2, 0)) == 1
    assert gen.rate((2, -1), (-1, 2)) == q**2


def test_braided_rate_examples():
    assert braided_rate(2, 2, 0, 2, q) == q**8
    assert braided_rate(2, 2, 0, 1, q) == (1 - q**2) * (q**3 + q) ** 2
    assert braided_rate(2, 2, 0, 0, q) == (1 - q**4) * (1 - q**2)
    # l2 never exceeds k1
    assert braided_rate(3, 1, 2, 2, q) == 0
    # l1 out of range
    assert braided_rate(2, 2, 2, 1, q) == 0


def test_braided_rate_at_q_one():
    assert braided_rate(3, 2, 1, 2, Fraction(1)) == 1
    assert braided_rate(3, 2, 1, 1, Fraction(1)) == 0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_braided_rate_is_a_distribution(m):
    for k1 in range(m + 1):
        for k2 in range(m + 1):
            assert sum(braided_rate(m, k1, k2, l2, q) for l2 in range(m + 1)) == 1


def test_bond_table():
    table = bond_table(ClosedFormRates(2, q))
    assert table[0, 0] == []
    assert table[2, 0] == [(1, 1, (1 - q**2) * (q**3 + q) ** 2), (0, 2, q**8)]
    assert table[0, 2] == [(2, 0, Fraction(1))]


def test_rate_sources_agree():
    closed, fused = ClosedFormRates(3, q), FusionOracleRates(3, q)
    for k1 in range(4):
        for k2 in range(4):
            for l2 in range(4):
                assert closed.probability(k1, k2, l2) == fused.probability(k1, k2, l2)


def test_braided_two_sites_matches_fixture():
    gen = build_braided(2, 2, q)
    assert gen.matrix == reflect_bond(bond_generator_fixture(q), 2)
    assert gen.matrix == build_braided(2, 2, q, RateSource.FUSION_ORACLE).matrix


def test_braided_single_particle_is_msasep():
    assert build_braided(3, 1, q).matrix == build_msasep(3, 1, q).matrix


def test_braided_empty_lattice():
    gen = build_braided(3, 2, q)
    assert gen.transitions((0, 0, 0)) == {}


def test_build_generator_dispatch():
    spec = ModelSpec(Model.OPEN, 2, 1)
    assert build_generator(spec, q, Q).matrix == build_open(2, 1, q, Q).matrix
    with pytest.raises(ParameterError):
        build_generator(spec, q)
    assert build_generator(ModelSpec(Model.BRAIDED, 2, 2), q).spec.model == Model.BRAIDED


def test_generator_json():
    gen = build_msasep(2, 1, q)
    data = gen.to_json()
    assert data["states"] == [list(c) for c in enumerate_states(ModelSpec(Model.MSASEP, 2, 1))]
    assert [2, 1, "1/4"] in data["entries"]
    assert [1, 2, "1"] in data["entries"]


unit_fractions = st.fractions(
    min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=12
)
small_specs = st.one_of(
    st.builds(lambda L, n: ModelSpec(Model.MSASEP, L, n), st.integers(2, 3), st.integers(1, 2)),
    st.builds(lambda L, r: ModelSpec(Model.OPEN, L, r), st.integers(1, 2), st.integers(1, 2)),
    st.builds(lambda L, m: ModelSpec(Model.BRAIDED, L, m), st.integers(2, 3), st.integers(1, 2)),
)


@settings(max_examples=30, deadline=None)
@given(small_specs, unit_fractions, unit_fractions)
def test_generator_invariants(spec, q_value, Q_value):
    gen = build_generator(spec, q_value, Q_value)
    assert all(total == 0 for total in gen.row_sums())
    for i, j, rate in gen.off_diagonal():
        assert rate > 0
        source, target = gen.space.config_of(i), gen.space.config_of(j)
        assert sector(spec.model, source) == sector(spec.model, target)


@settings(max_examples=10, deadline=None)
@given(unit_fractions, st.sampled_from([(Model.MSASEP, 3, 2), (Model.BRAIDED, 2, 2), (Model.BRAIDED, 3, 1)]))
def test_self_duality_for_any_q(q_value, shape):
    spec = ModelSpec(*shape)
    gen = build_generator(spec, q_value)
    assert markov_residual(gen.matrix, duality_matrix(spec, q_value).matrix).is_zero()
