"""
Some generally useful things.

`RationalMatrix` is the single matrix type of the library - generators,
duality functionals, Hecke generators and fusion maps are all instances.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DimensionMismatch
from .qnum import format_rational

Scalar = Union[Fraction, int]


class RationalMatrix:
    """Sparse matrix with exact rational entries.

    Stored as a dict of rows, every row a dict column -> nonzero value.
    Rows are sources and columns targets whenever a matrix is read
    probabilistically.
    """

    __hash__ = None  # type: ignore

    def __init__(
        self,
        n_rows: int,
        n_cols: int | None = None,
        entries: Mapping[tuple[int, int], Scalar] | None = None,
    ) -> None:
        self.n_rows = n_rows
        self.n_cols = n_rows if n_cols is None else n_cols
        self.rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), value in (entries or {}).items():
            self[i, j] = value

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls.diagonal([Fraction(1)] * size)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> RationalMatrix:
        return cls(len(values), entries={(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence[Scalar]]) -> RationalMatrix:
        n_cols = len(grid[0]) if grid else 0
        result = cls(len(grid), n_cols)
        for i, line in enumerate(grid):
            if len(line) != n_cols:
                raise DimensionMismatch(f"Row {i} has {len(line)} entries, not {n_cols}")
            for j, value in enumerate(line):
                result[i, j] = value
        return result

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.rows.get(i, {}).get(j, Fraction(0))

    def __setitem__(self, key: tuple[int, int], value: Scalar) -> None:
        i, j = key
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"Entry {key} outside of a {self.shape} matrix")
        value = Fraction(value)
        if value:
            self.rows.setdefault(i, {})[j] = value
        elif j in self.rows.get(i, {}):
            del self.rows[i][j]
            if not self.rows[i]:
                del self.rows[i]

    def add_to(self, i: int, j: int, value: Scalar) -> None:
        self[i, j] = self[i, j] + value

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self.rows.get(i, {}))

    def items(self) -> Iterator[tuple[int, int, Fraction]]:
        """Nonzero entries, in row-major order."""
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def copy(self) -> RationalMatrix:
        result = RationalMatrix(self.n_rows, self.n_cols)
        result.rows = {i: dict(row) for i, row in self.rows.items()}
        return result

    @property
    def T(self) -> RationalMatrix:
        result = RationalMatrix(self.n_cols, self.n_rows)
        for i, row in self.rows.items():
            for j, value in row.items():
                result.rows.setdefault(j, {})[i] = value
        return result

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        result = RationalMatrix(self.n_rows, other.n_cols)
        for i, row in self.rows.items():
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                for j, b in other.rows.get(k, {}).items():
                    acc[j] = acc.get(j, Fraction(0)) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                result.rows[i] = acc
        return result

    def _combine(self, other: RationalMatrix, sign: int) -> RationalMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"Shapes differ: {self.shape} vs {other.shape}")
        result = self.copy()
        for i, j, value in other.items():
            result.add_to(i, j, sign * value)
        return result

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self._combine(other, -1)

    def __mul__(self, scalar: Scalar) -> RationalMatrix:
        scalar = Fraction(scalar)
        result = RationalMatrix(self.n_rows, self.n_cols)
        if scalar:
            result.rows = {
                i: {j: v * scalar for j, v in row.items()}
                for i, row in self.rows.items()
            }
        return result

    __rmul__ = __mul__

    def __neg__(self) -> RationalMatrix:
        return self * -1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def kron(self, other: RationalMatrix) -> RationalMatrix:
        """Kronecker product, `self` being the most significant factor."""
        result = RationalMatrix(self.n_rows * other.n_rows, self.n_cols * other.n_cols)
        for i, j, a in self.items():
            for k, l, b in other.items():
                result.rows.setdefault(i * other.n_rows + k, {})[
                    j * other.n_cols + l
                ] = (a * b)
        return result

    def apply(self, vector: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Matrix times column vector, vectors being sparse dicts."""
        result: dict[int, Fraction] = {}
        for i, row in self.rows.items():
            total = sum(
                (value * vector[j] for j, value in row.items() if j in vector),
                Fraction(0),
            )
            if total:
                result[i] = total
        return result

    def diagonal_values(self) -> list[Fraction]:
        return [self[i, i] for i in range(min(self.shape))]

    def row_sums(self) -> list[Fraction]:
        return [
            sum(self.rows.get(i, {}).values(), Fraction(0)) for i in range(self.n_rows)
        ]

    def is_zero(self) -> bool:
        return not self.rows

    def max_abs_entry(self) -> Fraction:
        return max((abs(v) for _, _, v in self.items()), default=Fraction(0))

    def first_nonzero(self) -> tuple[int, int] | None:
        for i, j, _ in self.items():
            return i, j
        return None

    def to_dense(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(self.n_cols)] for i in range(self.n_rows)]

    def format(self) -> str:
        """Dense bracketed grid, e.g. `[[1, 0], [0, 1/2]]` one row per line."""
        cells = [[format_rational(v) for v in line] for line in self.to_dense()]
        width = max((len(c) for line in cells for c in line), default=1)
        body = ",\n ".join(
            "[" + ", ".join(c.rjust(width) for c in line) + "]" for line in cells
        )
        return f"[{body}]"

    def __repr__(self) -> str:
        return f"RationalMatrix(shape={self.shape}, nnz={self.nnz})"


def kron_all(factors: Iterable[RationalMatrix]) -> RationalMatrix:
    """Kronecker product of a sequence, first factor most significant."""
    result: RationalMatrix | None = None
    for factor in factors:
        result = factor if result is None else result.kron(factor)
    if result is None:
        return RationalMatrix.identity(1)
    return result


class ProgressBar:
    """Simple progress bar.

    More suitable for our purposes than `click.progressbar`,
    because of its flexibility - no need to use it in `with` statement.
    Written to stderr, stdout is reserved for JSON.
    """

    def __init__(self, total_amount: int, bar_length: int = 50) -> None:
        self.total_amount = max(total_amount, 1)
        self.bar_length = bar_length
        self.percents_previous = -1

    def update(self, count: int) -> None:
        percents = int(100.0 * count / self.total_amount)

        if percents == self.percents_previous:
            return
        self.percents_previous = percents

        filled_length = int(self.bar_length * percents / 100)
        bar = "#" * filled_length + "-" * (self.bar_length - filled_length)

        # [###-----------------------------------------------] 6% ... 3/50
        sys.stderr.write(f"\r[{bar}] {percents}% ... {count}/{self.total_amount}")
        if count >= self.total_amount:
            sys.stderr.write("\n")
        sys.stderr.flush()
