"""Shared fixtures and helpers for the test suite.

The two point sets below live on the 2x2x2 grid and are used across several
modules: FIVE_POINTS is a minimal cycle whose unique weight direction is
(2, -1, -1, -1, 1), and SIX_POINTS extends it by (0, 1, 1), which keeps it a
cycle but destroys minimality (the kernel becomes two dimensional).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from golombdual import (
    MinimalCycle,
    ProductGrid,
    SeparableSum,
    TabulatedFunction,
    incidence_matrix,
    kernel_basis,
    normalize_minimal,
)

CUBE = ProductGrid((2, 2, 2))

FIVE_POINTS = ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))
FIVE_CERT = (2, -1, -1, -1, 1)

SIX_POINTS = FIVE_POINTS + ((0, 1, 1),)
SIX_CERT = (3, -1, -1, -2, 2, -1)

SQUARE = ((0, 0), (0, 1), (1, 1), (1, 0))


def rat(value) -> Fraction:
    return Fraction(value)


def table(shape: tuple[int, ...], values) -> TabulatedFunction:
    grid = ProductGrid(shape)
    return TabulatedFunction(grid, tuple(Fraction(v) for v in values))


def random_table(
    rng: random.Random, grid: ProductGrid, bound: int = 10
) -> TabulatedFunction:
    values = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(grid.volume))
    return TabulatedFunction(grid, values)


def random_separable(
    rng: random.Random, grid: ProductGrid, bound: int = 10
) -> SeparableSum:
    tables = tuple(
        tuple(Fraction(rng.randint(-bound, bound)) for _ in range(size))
        for size in grid.factor_sizes
    )
    return SeparableSum(grid, tables)


def brute_force_minimal_cycles(grid: ProductGrid) -> set[MinimalCycle]:
    """Reference enumeration: test every subset of the grid directly.

    A subset is a minimal cycle exactly when its incidence kernel is one
    dimensional and the spanning vector has no zero entry. Only sensible for
    small volumes; the main enumerator is checked against this.
    """
    points = tuple(grid.points())
    found: set[MinimalCycle] = set()
    for size in range(2, len(points) + 1):
        for subset in combinations(points, size):
            basis = kernel_basis(incidence_matrix(subset, grid))
            if len(basis) == 1 and all(w != 0 for w in basis[0]):
                found.add(normalize_minimal(subset, grid))
    return found
