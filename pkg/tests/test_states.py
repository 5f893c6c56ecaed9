from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdlab.lib.api import Model, ModelSpec
from mdlab.lib.errors import ConfigParseError, ParameterError, StateCapExceeded
from mdlab.lib.states import (
    OpenSequence,
    enumerate_states,
    format_config,
    from_sequence,
    left_count,
    parse_config,
    right_count,
    sector,
    species_sites,
    to_sequence,
)

from .common import XI


def test_enumerate_braided():
    space = enumerate_states(ModelSpec(Model.BRAIDED, L=2, species=2))
    assert len(space) == 9
    assert space.configs[:4] == ((0, 0), (0, 1), (0, 2), (1, 0))
    # lexicographic order makes the index the occupancy pair in base m + 1
    assert space.index_of((2, 1)) == 2 * 3 + 1


@pytest.mark.parametrize(
    "spec,size",
    [
        (ModelSpec(Model.MSASEP, 3, 2), 27),
        (ModelSpec(Model.OPEN, 3, 1), 81),
        (ModelSpec(Model.OPEN, 1, 2), 25),
        (ModelSpec(Model.BRAIDED, 3, 3), 64),
    ],
)
def test_state_space_sizes(spec, size):
    assert spec.size == size
    assert len(enumerate_states(spec)) == size


def test_open_labels_and_origin():
    spec = ModelSpec(Model.OPEN, 2, 1)
    assert spec.origin == 0
    assert list(spec.sites) == [0, 1, 2]
    assert list(spec.labels) == [-1, 0, 1]
    assert enumerate_states(spec).configs[0] == (-1, -1, -1)


def test_state_cap():
    with pytest.raises(StateCapExceeded) as e:
        enumerate_states(ModelSpec(Model.MSASEP, 3, 2), cap=10)
    assert e.value.size == 27
    assert e.value.cap == 10


def test_state_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MDL_STATE_CAP", "5")
    with pytest.raises(StateCapExceeded):
        enumerate_states(ModelSpec(Model.BRAIDED, 2, 2))


def test_invalid_spec():
    with pytest.raises(ParameterError):
        enumerate_states(ModelSpec(Model.MSASEP, 0, 1))
    with pytest.raises(ParameterError):
        enumerate_states(ModelSpec(Model.BRAIDED, 2, 0))


def test_index_of_unknown_state():
    space = enumerate_states(ModelSpec(Model.MSASEP, 2, 1))
    assert (1, 0) in space
    assert (2, 0) not in space
    with pytest.raises(ParameterError):
        space.index_of((2, 0))


def test_counts():
    config = (1, 0, 1, 1)
    assert right_count(config, 1, 1) == 2
    assert right_count(config, 3, 1) == 1
    assert left_count(config, 4, 1) == 2
    assert left_count(config, 1, 1) == 0
    # site 0 first in the open model
    assert right_count(XI, 0, 1, origin=0) == 1
    assert left_count(XI, 3, -1, origin=0) == 1
    # occupancies summed for the braided model
    assert left_count((2, 1, 3), 3) == 3
    assert right_count((2, 1, 3), 1) == 4
    with pytest.raises(ParameterError):
        right_count(config, 5, 1)


def test_species_sites():
    assert species_sites((2, 1, 0, 1), 1) == (2, 4)
    assert species_sites(XI, -1, origin=0) == (1,)
    assert species_sites(XI, 1, origin=0) == (0, 3)


def test_sector():
    assert sector(Model.BRAIDED, (2, 1)) == 3
    assert sector(Model.OPEN, (1, -1, 0, 1)) == ((1, 3),)
    assert sector(Model.MSASEP, (2, 1, 0, 1)) == ((1, 2), (2, 1))
    # boundary flips keep the open sector
    assert sector(Model.OPEN, (-1, 0)) == sector(Model.OPEN, (1, 0))


def test_parse_config():
    assert parse_config("-1, -1 1 1") == (-1, -1, 1, 1)
    assert parse_config(" 3 0 ") == (3, 0)
    assert format_config((-1, 0, 1)) == "-1 0 1"


@pytest.mark.parametrize("text", ["", "  ", "1 x", "1.5 2"])
def test_parse_config_rejects(text):
    with pytest.raises(ConfigParseError):
        parse_config(text)


def test_parse_config_against_spec():
    spec = ModelSpec(Model.OPEN, 3, 1)
    assert parse_config("1 -1 0 1", spec) == (1, -1, 0, 1)
    with pytest.raises(ConfigParseError):
        parse_config("1 -1 0", spec)
    with pytest.raises(ConfigParseError):
        parse_config("2 -1 0 1", spec)


def test_to_sequence():
    seq = to_sequence((1, -1, 0, 1))
    assert seq == OpenSequence(L=3, xs=(3,), z0=1, ys=(1,))
    assert seq.d_plus == 1
    assert seq.d_minus == 1
    assert seq.format() == "(3;1;1)"


def test_sequence_rejects():
    with pytest.raises(ParameterError):
        to_sequence((2, 0))
    with pytest.raises(ParameterError):
        from_sequence(OpenSequence(L=2, xs=(1,), z0=0, ys=(1,)))


@given(st.integers(min_value=1, max_value=4).flatmap(
    lambda L: st.tuples(*[st.sampled_from([-1, 0, 1])] * (L + 1))
))
def test_sequence_bijection(config):
    assert from_sequence(to_sequence(config)) == config
