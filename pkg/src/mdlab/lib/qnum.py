"""
Exact q-deformed arithmetic.

Everything is evaluated at a rational point q, so identities between
q-quantities become plain equalities of `Fraction`s.

>>> q_int(3, Fraction(1, 2))
Fraction(21, 16)
>>> q_binomial(3, 2, Fraction(1, 2))
Fraction(21, 16)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import ConfigParseError, ParameterError

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class BinomialConvention(Enum):
    STANDARD = "standard"
    # Standard value times q^{-k(n-k)}, i.e. invariant under q -> 1/q
    SYMMETRIC = "symmetric"


def parse_rational(value: RationalLike) -> Fraction:
    """Parse "p/q" or "p" into an exact rational.

    Decimal literals are not accepted, "0.5" must be written "1/2".
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ConfigParseError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    match = _RATIONAL_RE.match(str(value))
    if not match:
        raise ConfigParseError(f"Not a rational literal (expected p/q): {value!r}")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ConfigParseError(f"Zero denominator in {value!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def check_open_unit(value: Fraction, name: str = "q") -> Fraction:
    """Return `value` if it lies strictly inside (0, 1)."""
    if not 0 < value < 1:
        raise ParameterError(f"{name} must lie strictly between 0 and 1, got {value}")
    return value


@dataclass(frozen=True)
class QParams:
    q: Fraction
    Q: Fraction | None = None  # open model only
    m: int | None = None  # braided model only

    def __post_init__(self) -> None:
        check_open_unit(self.q, "q")
        if self.Q is not None:
            check_open_unit(self.Q, "Q")
        if self.m is not None and self.m < 1:
            raise ParameterError(f"m must be at least 1, got {self.m}")

    @classmethod
    def parse(
        cls, q: RationalLike, Q: RationalLike | None = None, m: int | None = None
    ) -> QParams:
        return cls(
            q=parse_rational(q),
            Q=None if Q is None else parse_rational(Q),
            m=m,
        )


def q_int(n: int, q: Fraction) -> Fraction:
    """[n]_{q^2} = (1 - q^{2n}) / (1 - q^2)"""
    if n < 0:
        raise ParameterError(f"q_int needs n >= 0, got {n}")
    q = Fraction(q)
    if q == 1:
        raise ParameterError("q_int is undefined at q = 1, use the limit value n")
    return (1 - q ** (2 * n)) / (1 - q**2)


def q_factorial(n: int, q: Fraction) -> Fraction:
    result = Fraction(1)
    for i in range(1, n + 1):
        result *= q_int(i, q)
    return result


def q_binomial(
    n: int,
    k: int,
    q: Fraction,
    convention: BinomialConvention = BinomialConvention.STANDARD,
) -> Fraction:
    """Gaussian binomial in base q^2; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return Fraction(0)
    value = q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))
    if convention is BinomialConvention.SYMMETRIC:
        value *= Fraction(q) ** (-k * (n - k))
    return value


def q_pochhammer(a: Fraction, base: Fraction, n: int) -> Fraction:
    """(a; base)_n = (1 - a)(1 - a*base)...(1 - a*base^{n-1})

    `base` may be bigger than one, e.g. q^{-2}.
    """
    if n < 0:
        raise ParameterError(f"q_pochhammer needs n >= 0, got {n}")
    result = Fraction(1)
    term = Fraction(a)
    for _ in range(n):
        result *= 1 - term
        term *= base
    return result


def q_binomial_pascal_ok(n: int, q: Fraction) -> bool:
    """qbin(n-1, k-1) + q^{2k} qbin(n-1, k) == qbin(n, k) for all 0 <= k <= n.

    Meaningful for n >= 1.
    """
    return all(
        q_binomial(n - 1, k - 1, q) + q ** (2 * k) * q_binomial(n - 1, k, q)
        == q_binomial(n, k, q)
        for k in range(n + 1)
    )
