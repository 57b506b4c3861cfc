"""Finitely supported signed measures on a product grid.

The measures of interest annihilate every separable sum; by the marginal
criterion that holds exactly when all axis marginals vanish. Atom lists are
kept canonical (sorted by flat index, no zero masses) so equality of measures
is plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

from .grids import GridPoint, ProductGrid, TabulatedFunction, point_index
from .linalg import format_rat, parse_rat

if TYPE_CHECKING:  # only for annotations; cycles.py imports this module at runtime
    from .cycles import CycleVectorPair, GolombCycle

Atom = tuple[GridPoint, Fraction]


@dataclass(frozen=True)
class FiniteSignedMeasure:
    grid: ProductGrid
    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        seen = set()
        last = -1
        for point, mass in self.atoms:
            self.grid.check_point(point)
            if mass == 0:
                raise ValueError("zero-mass atom in canonical measure")
            idx = point_index(self.grid, point)
            if idx in seen:
                raise ValueError(f"duplicate atom at {point}")
            if idx < last:
                raise ValueError("atoms must be sorted by flat index")
            seen.add(idx)
            last = idx

    @classmethod
    def from_atoms(
        cls, grid: ProductGrid, pairs: Iterable[tuple[GridPoint, Fraction | int]]
    ) -> "FiniteSignedMeasure":
        """Canonicalize: accumulate repeated points, drop zeros, sort."""
        acc: dict[GridPoint, Fraction] = {}
        for point, mass in pairs:
            pt = grid.check_point(point)
            acc[pt] = acc.get(pt, Fraction(0)) + Fraction(mass)
        atoms = tuple(
            (pt, acc[pt])
            for pt in sorted(acc, key=lambda p: point_index(grid, p))
            if acc[pt] != 0
        )
        return cls(grid, atoms)

    def mass_at(self, point: GridPoint) -> Fraction:
        pt = self.grid.check_point(point)
        for p, m in self.atoms:
            if p == pt:
                return m
        return Fraction(0)

    @property
    def support(self) -> tuple[GridPoint, ...]:
        return tuple(p for p, _ in self.atoms)

    def is_zero(self) -> bool:
        return not self.atoms

    def _same_grid(self, other: "FiniteSignedMeasure") -> None:
        if self.grid != other.grid:
            raise ValueError("grid mismatch")

    def __add__(self, other: "FiniteSignedMeasure") -> "FiniteSignedMeasure":
        self._same_grid(other)
        return FiniteSignedMeasure.from_atoms(self.grid, [*self.atoms, *other.atoms])

    def __sub__(self, other: "FiniteSignedMeasure") -> "FiniteSignedMeasure":
        return self + (-other)

    def __neg__(self) -> "FiniteSignedMeasure":
        return FiniteSignedMeasure(self.grid, tuple((p, -m) for p, m in self.atoms))

    def __mul__(self, scalar: Fraction | int) -> "FiniteSignedMeasure":
        c = Fraction(scalar)
        if c == 0:
            return FiniteSignedMeasure(self.grid, ())
        return FiniteSignedMeasure(self.grid, tuple((p, c * m) for p, m in self.atoms))

    __rmul__ = __mul__


def total_variation(mu: FiniteSignedMeasure) -> Fraction:
    return sum((abs(m) for _, m in mu.atoms), Fraction(0))


def marginal(mu: FiniteSignedMeasure, axis: int) -> dict[int, Fraction]:
    """Pushforward of the measure onto one factor, as value -> mass.

    Every factor value of the grid appears as a key, including values that
    carry no mass.
    """
    if not 0 <= axis < mu.grid.n:
        raise ValueError(f"axis {axis} out of range")
    out = {value: Fraction(0) for value in range(mu.grid.factor_sizes[axis])}
    for point, mass in mu.atoms:
        out[point[axis]] += mass
    return out


def is_orthogonal(mu: FiniteSignedMeasure) -> bool:
    """True when every axis marginal vanishes identically, which is exactly
    when the measure annihilates every separable sum."""
    return all(
        all(v == 0 for v in marginal(mu, axis).values()) for axis in range(mu.grid.n)
    )


def integrate(f: TabulatedFunction, mu: FiniteSignedMeasure) -> Fraction:
    if f.grid != mu.grid:
        raise ValueError("grid mismatch")
    return sum((mass * f.value_at(point) for point, mass in mu.atoms), Fraction(0))


def measure_from_pair(pair: "CycleVectorPair") -> FiniteSignedMeasure:
    """Normalized atomic measure of a weighted cycle: mass lambda_j / sum|lambda|
    at each point. Total variation is 1 and all marginals vanish."""
    total = sum(abs(w) for w in pair.weights)
    return FiniteSignedMeasure.from_atoms(
        pair.grid, ((p, w / total) for p, w in zip(pair.points, pair.weights))
    )


def golomb_measure(gc: "GolombCycle") -> FiniteSignedMeasure:
    """Measure of a cycle in two-part form: +1/(2k) per b entry, -1/(2k) per
    c entry, accumulated over multiplicities. Total variation is 1 because
    the parts are disjoint."""
    k = len(gc.b_part)
    unit = Fraction(1, 2 * k)
    pairs = [(p, unit) for p in gc.b_part] + [(p, -unit) for p in gc.c_part]
    return FiniteSignedMeasure.from_atoms(gc.grid, pairs)


def measure_to_json(mu: FiniteSignedMeasure) -> dict:
    return {
        "shape": list(mu.grid.factor_sizes),
        "atoms": [
            {"point": list(p), "mass": format_rat(m)} for p, m in mu.atoms
        ],
    }


def measure_from_json(obj: object) -> FiniteSignedMeasure:
    if not isinstance(obj, dict) or "shape" not in obj or "atoms" not in obj:
        raise ValueError('measure JSON needs "shape" and "atoms" keys')
    shape = obj["shape"]
    if not isinstance(shape, list) or not all(isinstance(s, int) for s in shape):
        raise ValueError('"shape" must be a list of integers')
    grid = ProductGrid(tuple(shape))
    atoms = obj["atoms"]
    if not isinstance(atoms, list):
        raise ValueError('"atoms" must be a list')
    pairs = []
    for entry in atoms:
        if not isinstance(entry, dict) or "point" not in entry or "mass" not in entry:
            raise ValueError('each atom needs "point" and "mass"')
        pairs.append((tuple(entry["point"]), parse_rat(entry["mass"])))
    return FiniteSignedMeasure.from_atoms(grid, pairs)
