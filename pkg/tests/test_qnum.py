from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdlab.lib.errors import ConfigParseError, ParameterError
from mdlab.lib.qnum import (
    BinomialConvention,
    QParams,
    check_open_unit,
    format_rational,
    parse_rational,
    q_binomial,
    q_binomial_pascal_ok,
    q_factorial,
    q_int,
    q_pochhammer,
)

from .common import q

unit_rationals = st.fractions(
    min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1/2", Fraction(1, 2)),
        ("3/6", Fraction(1, 2)),
        (" -2 ", Fraction(-2)),
        ("7", Fraction(7)),
        ("2 / 3", Fraction(2, 3)),
        (5, Fraction(5)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["0.5", "1/0", "", "a/b", "1/2/3", True])
def test_parse_rational_rejects(text):
    with pytest.raises(ConfigParseError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    assert format_rational(0) == "0"


@given(unit_rationals)
def test_format_parse_inverse(value):
    assert parse_rational(format_rational(value)) == value


@pytest.mark.parametrize("value", [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 2)])
def test_check_open_unit_rejects(value):
    with pytest.raises(ParameterError):
        check_open_unit(value, "Q")


def test_qparams():
    params = QParams.parse("1/2", "1/3", 2)
    assert params.q == Fraction(1, 2)
    assert params.Q == Fraction(1, 3)
    assert params.m == 2
    with pytest.raises(ParameterError):
        QParams.parse("1/2", m=0)
    with pytest.raises(ParameterError):
        QParams.parse("1")


def test_q_int():
    assert q_int(0, q) == 0
    assert q_int(1, q) == 1
    assert q_int(3, q) == Fraction(21, 16)
    with pytest.raises(ParameterError):
        q_int(2, Fraction(1))
    with pytest.raises(ParameterError):
        q_int(-1, q)


def test_q_factorial():
    assert q_factorial(0, q) == 1
    assert q_factorial(3, q) == Fraction(5, 4) * Fraction(21, 16)


def test_q_binomial():
    assert q_binomial(3, 2, q) == Fraction(21, 16)
    assert q_binomial(4, 2, q) == Fraction(357, 256)
    assert q_binomial(4, 2, q, BinomialConvention.SYMMETRIC) == Fraction(357, 16)
    assert q_binomial(3, 4, q) == 0
    assert q_binomial(3, -1, q) == 0
    assert q_binomial(5, 0, q) == q_binomial(5, 5, q) == 1


def test_q_pochhammer():
    assert q_pochhammer(q, q, 0) == 1
    assert q_pochhammer(q, q, 2) == Fraction(3, 8)
    # base above one, the factor with a * base^k = 1 vanishes
    assert q_pochhammer(q**2, q**-2, 2) == 0
    with pytest.raises(ParameterError):
        q_pochhammer(q, q, -1)


@given(unit_rationals, st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
def test_q_binomial_symmetric_in_k(value, n, k):
    assert q_binomial(n, k, value) == q_binomial(n, n - k, value)


@given(unit_rationals, st.integers(min_value=1, max_value=8))
def test_q_pascal(value, n):
    assert q_binomial_pascal_ok(n, value)


@given(unit_rationals, st.integers(min_value=0, max_value=6))
def test_symmetric_convention_invariant_under_inversion(value, n):
    for k in range(n + 1):
        assert q_binomial(n, k, value, BinomialConvention.SYMMETRIC) == q_binomial(
            n, k, 1 / value, BinomialConvention.SYMMETRIC
        )
