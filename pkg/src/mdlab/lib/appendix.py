"""
Worked matrices for two particles per site (m = 2), as polynomials in q.

Used as fixed reference values by `verify.check_appendix_fixtures`.
The block orientation is the fused one, see `fusion.reflect_bond`.
"""

from __future__ import annotations

from fractions import Fraction

from .common import RationalMatrix


def s_check_fixture(q: Fraction) -> RationalMatrix:
    return RationalMatrix.from_dense(
        [
            [1, 0, 0, 0],
            [0, 1 - q**2, q**2, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
        ]
    )


def fused_generator_fixture(q: Fraction) -> RationalMatrix:
    """S23 S12 S34 S23 - Id on four legs."""
    q2, q4, q6, q8 = q**2, q**4, q**6, q**8
    entries = {
        (1, 1): -q2, (1, 2): q2 - q4, (1, 4): q4,
        (2, 1): 1 - q2, (2, 2): -q4 + q2 - 1, (2, 8): q4,
        (3, 3): q2 * (q4 - q2 - 1), (3, 5): q2 - q4, (3, 6): q4 - q6,
        (3, 9): q4 - q6, (3, 10): q6 - q8, (3, 12): q8,
        (4, 1): 1, (4, 4): -1,
        (5, 3): 1 - q2, (5, 5): q2 - 1,
        (6, 3): 1 - q2, (6, 6): -1, (6, 9): q2,
        (7, 7): -q2, (7, 11): q2 - q4, (7, 13): q4,
        (8, 2): 1, (8, 8): -1,
        (9, 3): 1 - q2, (9, 6): q2, (9, 9): -1,
        (10, 3): 1 - q2, (10, 10): q2 - 1,
        (11, 7): 1 - q2, (11, 11): -q4 + q2 - 1, (11, 14): q4,
        (12, 3): 1, (12, 12): -1,
        (13, 7): 1, (13, 13): -1,
        (14, 11): 1, (14, 14): -1,
    }  # fmt: skip
    return RationalMatrix(16, entries=entries)


def fission_fixture(s: Fraction) -> RationalMatrix:
    one, two = 1 / (s + 1), 1 / (s + 1) ** 2
    entries = {
        (0, 0): 1,
        (1, 1): one, (1, 2): s * one,
        (2, 3): 1,
        (3, 4): one, (3, 8): s * one,
        (4, 5): two, (4, 6): s * two, (4, 9): s * two, (4, 10): s**2 * two,
        (5, 7): one, (5, 11): s * one,
        (6, 12): 1,
        (7, 13): one, (7, 14): s * one,
        (8, 15): 1,
    }  # fmt: skip
    return RationalMatrix(9, 16, entries)


def fusion_fixture() -> RationalMatrix:
    targets = [0, 1, 1, 2, 3, 4, 4, 5, 3, 4, 4, 5, 6, 7, 7, 8]
    return RationalMatrix(16, 9, {(row, col): 1 for row, col in enumerate(targets)})


def bond_generator_fixture(q: Fraction) -> RationalMatrix:
    """Lambda L Phi on occupancy pairs (a, b), index 3a + b."""
    q2, q4 = q**2, q**4
    entries = {
        (1, 1): -q4, (1, 3): q4,
        (2, 2): q2 * (q4 - q2 - 1), (2, 4): (1 - q2) * (q**3 + q) ** 2, (2, 6): q**8,
        (3, 1): 1, (3, 3): -1,
        (4, 2): 1 - q2, (4, 4): q2 - 1,
        (5, 5): -q4, (5, 7): q4,
        (6, 2): 1, (6, 6): -1,
        (7, 5): 1, (7, 7): -1,
    }  # fmt: skip
    return RationalMatrix(9, entries=entries)


def g_fixture(q: Fraction) -> list[Fraction]:
    """Diagonal G with G^{-2} reversible for the bond generator."""
    return [
        Fraction(1), Fraction(1), Fraction(1),
        q**-2, 1 / (q * (1 + q**2)), Fraction(1),
        q**-4, q**-2, Fraction(1),
    ]  # fmt: skip
