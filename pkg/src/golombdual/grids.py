"""Finite product grids, tabulated functions on them, and separable sums.

A grid is a product of index sets {0..s_i - 1}. Functions are stored as
row-major value tables (the last axis varies fastest), separable sums as one
value table per axis. The flat index of a point (c_1, ..., c_n) is
(((c_1 * s_2) + c_2) * s_3 + c_3) and so on.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .linalg import RatMatrix, format_rat, parse_rat

GridPoint = tuple[int, ...]


@dataclass(frozen=True)
class ProductGrid:
    factor_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor_sizes", tuple(int(s) for s in self.factor_sizes))
        if not self.factor_sizes:
            raise ValueError("a grid needs at least one factor")
        if any(s < 1 for s in self.factor_sizes):
            raise ValueError("factor sizes must be positive")

    @property
    def n(self) -> int:
        return len(self.factor_sizes)

    @property
    def volume(self) -> int:
        v = 1
        for s in self.factor_sizes:
            v *= s
        return v

    def points(self) -> Iterator[GridPoint]:
        """All grid points in row-major (flat index) order."""
        return product(*(range(s) for s in self.factor_sizes))

    def contains(self, point: GridPoint) -> bool:
        return len(point) == self.n and all(
            0 <= c < s for c, s in zip(point, self.factor_sizes)
        )

    def check_point(self, point: Sequence[int]) -> GridPoint:
        pt = tuple(int(c) for c in point)
        if not self.contains(pt):
            raise ValueError(f"point {pt} is not on a grid of shape {self.factor_sizes}")
        return pt


def point_index(grid: ProductGrid, point: GridPoint) -> int:
    """Row-major flat index of a grid point."""
    pt = grid.check_point(point)
    idx = 0
    for c, s in zip(pt, grid.factor_sizes):
        idx = idx * s + c
    return idx


def point_of(grid: ProductGrid, index: int) -> GridPoint:
    """Inverse of point_index."""
    if not 0 <= index < grid.volume:
        raise ValueError(f"flat index {index} out of range for {grid.factor_sizes}")
    coords = []
    for s in reversed(grid.factor_sizes):
        coords.append(index % s)
        index //= s
    return tuple(reversed(coords))


@dataclass(frozen=True)
class TabulatedFunction:
    """A function on a grid, stored as a row-major tuple of rationals."""

    grid: ProductGrid
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.values) != self.grid.volume:
            raise ValueError(
                f"expected {self.grid.volume} values for shape "
                f"{self.grid.factor_sizes}, got {len(self.values)}"
            )

    def value_at(self, point: GridPoint) -> Fraction:
        return self.values[point_index(self.grid, point)]

    def _same_grid(self, other: "TabulatedFunction") -> None:
        if self.grid != other.grid:
            raise ValueError("grid mismatch")

    def __add__(self, other: "TabulatedFunction") -> "TabulatedFunction":
        self._same_grid(other)
        return TabulatedFunction(
            self.grid, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "TabulatedFunction") -> "TabulatedFunction":
        self._same_grid(other)
        return TabulatedFunction(
            self.grid, tuple(a - b for a, b in zip(self.values, other.values))
        )

    def __neg__(self) -> "TabulatedFunction":
        return TabulatedFunction(self.grid, tuple(-v for v in self.values))

    def __mul__(self, scalar: Fraction | int) -> "TabulatedFunction":
        c = Fraction(scalar)
        return TabulatedFunction(self.grid, tuple(c * v for v in self.values))

    __rmul__ = __mul__


@dataclass(frozen=True)
class SeparableSum:
    """A sum g_1(x_1) + ... + g_n(x_n), one value table per axis."""

    grid: ProductGrid
    tables: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "tables",
            tuple(tuple(Fraction(v) for v in t) for t in self.tables),
        )
        if len(self.tables) != self.grid.n:
            raise ValueError("one table per axis required")
        for t, s in zip(self.tables, self.grid.factor_sizes):
            if len(t) != s:
                raise ValueError("table length does not match factor size")

    @classmethod
    def zero(cls, grid: ProductGrid) -> "SeparableSum":
        return cls(grid, tuple(tuple(Fraction(0) for _ in range(s)) for s in grid.factor_sizes))


def evaluate(g: SeparableSum, point: GridPoint) -> Fraction:
    """Value of a separable sum at a point."""
    pt = g.grid.check_point(point)
    return sum((g.tables[i][c] for i, c in enumerate(pt)), Fraction(0))


def tabulate(g: SeparableSum) -> TabulatedFunction:
    values = [evaluate(g, p) for p in g.grid.points()]
    return TabulatedFunction(g.grid, tuple(values))


def residual(f: TabulatedFunction, g: SeparableSum) -> TabulatedFunction:
    """Pointwise difference f - g as a tabulated function."""
    if f.grid != g.grid:
        raise ValueError("grid mismatch")
    return f - tabulate(g)


def sup_norm(f: TabulatedFunction) -> Fraction:
    return max(abs(v) for v in f.values)


def incidence_matrix(points: Sequence[GridPoint], grid: ProductGrid) -> RatMatrix:
    """0/1 matrix with one row per realized (axis, value) class, one column
    per point; rows are axis-major with values ascending within each axis.

    A vector in its kernel has vanishing class sums along every axis, which
    is exactly the projection-cycle condition on the weights.
    """
    pts = [grid.check_point(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate point in incidence input")
    rows: list[list[int]] = []
    for axis in range(grid.n):
        for value in sorted({p[axis] for p in pts}):
            rows.append([1 if p[axis] == value else 0 for p in pts])
    if not rows:
        return RatMatrix(0, 0, ())
    return RatMatrix.from_rows(rows)


def function_to_json(f: TabulatedFunction) -> dict:
    return {
        "shape": list(f.grid.factor_sizes),
        "values": [format_rat(v) for v in f.values],
    }


def function_from_json(obj: object) -> TabulatedFunction:
    if not isinstance(obj, dict) or "shape" not in obj or "values" not in obj:
        raise ValueError('function JSON needs "shape" and "values" keys')
    shape = obj["shape"]
    if not isinstance(shape, list) or not all(isinstance(s, int) for s in shape):
        raise ValueError('"shape" must be a list of integers')
    values = obj["values"]
    if not isinstance(values, list):
        raise ValueError('"values" must be a list')
    grid = ProductGrid(tuple(shape))
    return TabulatedFunction(grid, tuple(parse_rat(v) for v in values))


def function_from_csv(text: str) -> TabulatedFunction:
    """Parse a two-axis function table from CSV: rows are the first axis,
    columns the second."""
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise ValueError("empty CSV input")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged CSV rows")
    grid = ProductGrid((len(rows), width))
    values = tuple(parse_rat(cell) for row in rows for cell in row)
    return TabulatedFunction(grid, values)
