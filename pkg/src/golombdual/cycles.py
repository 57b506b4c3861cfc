"""Projection cycles: weighted point sets whose class sums vanish on every axis.

A cycle vector on points x_1..x_m is a nowhere-zero rational vector lambda
with, for every axis, a zero sum over each group of points sharing a
coordinate value. Equivalently, lambda lies in the kernel of the incidence
matrix and has no zero entry. A cycle is minimal when that kernel is one
dimensional; minimal cycles carry an essentially unique weight vector and
their normalized measures are the extreme points among the annihilating
measures, which makes them the certificates behind the duality formula.

The two-part (b/c) form lists each point with multiplicity |n_i|, positive
entries in b and negative in c; the defining property is that for every axis
the coordinate multiset of c is a permutation of that of b, with no point in
both parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .grids import GridPoint, ProductGrid, incidence_matrix, point_index
from .linalg import (
    LpProblem,
    format_rat,
    kernel_basis,
    matrix_rank,
    parse_rat,
    solve_lp,
)
from .measures import (
    FiniteSignedMeasure,
    is_orthogonal,
    measure_from_pair,
    total_variation,
)


def _class_sums_vanish(
    points: Sequence[GridPoint], weights: Sequence[Fraction], n: int
) -> bool:
    for axis in range(n):
        sums: dict[int, Fraction] = {}
        for p, w in zip(points, weights):
            sums[p[axis]] = sums.get(p[axis], Fraction(0)) + w
        if any(v != 0 for v in sums.values()):
            return False
    return True


@dataclass(frozen=True)
class CycleVectorPair:
    """Distinct grid points together with a nowhere-zero weight vector whose
    class sums vanish along every axis."""

    grid: ProductGrid
    points: tuple[GridPoint, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.grid.check_point(p) for p in self.points))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if len(self.points) != len(self.weights):
            raise ValueError("points and weights must have equal length")
        if not self.points:
            raise ValueError("a cycle needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point in cycle")
        if any(w == 0 for w in self.weights):
            raise ValueError("cycle weights must be nonzero")
        if not _class_sums_vanish(self.points, self.weights, self.grid.n):
            raise ValueError("class sums do not vanish; not a cycle vector")


@dataclass(frozen=True)
class IntegerCertificate:
    """Integer cycle weights scaled to gcd 1."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if not self.entries:
            raise ValueError("empty certificate")
        if any(e == 0 for e in self.entries):
            raise ValueError("certificate entries must be nonzero")
        if gcd(*self.entries) != 1:
            raise ValueError("certificate entries must have gcd 1")


@dataclass(frozen=True)
class GolombCycle:
    """Two-part multiset form of an integer cycle."""

    grid: ProductGrid
    b_part: tuple[GridPoint, ...]
    c_part: tuple[GridPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "b_part", tuple(self.grid.check_point(p) for p in self.b_part))
        object.__setattr__(self, "c_part", tuple(self.grid.check_point(p) for p in self.c_part))
        if not self.b_part or len(self.b_part) != len(self.c_part):
            raise ValueError("b and c parts must be nonempty and of equal size")
        if set(self.b_part) & set(self.c_part):
            raise ValueError("a point appears in both parts")
        for axis in range(self.grid.n):
            b_coords = sorted(p[axis] for p in self.b_part)
            c_coords = sorted(p[axis] for p in self.c_part)
            if b_coords != c_coords:
                raise ValueError(
                    f"axis {axis}: c coordinates are not a permutation of b coordinates"
                )

    @property
    def k(self) -> int:
        return len(self.b_part)


@dataclass(frozen=True)
class MinimalCycle:
    """A cycle whose incidence kernel is one dimensional, carrying the
    normalized weight vector (sum of |weights| equal to 1).

    Either orientation of the weights is admitted; normalize_minimal returns
    the canonical one (positive weight at the lowest flat index).
    """

    pair: CycleVectorPair

    def __post_init__(self) -> None:
        if sum(abs(w) for w in self.pair.weights) != 1:
            raise ValueError("minimal cycle weights must be normalized to total mass 1")
        basis = kernel_basis(incidence_matrix(self.pair.points, self.pair.grid))
        if len(basis) != 1:
            raise ValueError("incidence kernel is not one dimensional; cycle not minimal")

    @property
    def grid(self) -> ProductGrid:
        return self.pair.grid

    @property
    def points(self) -> tuple[GridPoint, ...]:
        return self.pair.points

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return self.pair.weights

    def measure(self) -> FiniteSignedMeasure:
        return measure_from_pair(self.pair)


@dataclass(frozen=True)
class Decomposition:
    """A convex combination of minimal-cycle measures: positive weights
    summing to 1, one minimal cycle per term."""

    terms: tuple[tuple[Fraction, MinimalCycle], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("empty decomposition")
        if any(t <= 0 for t, _ in self.terms):
            raise ValueError("decomposition weights must be positive")
        if sum(t for t, _ in self.terms) != 1:
            raise ValueError("decomposition weights must sum to 1")

    def combined(self) -> FiniteSignedMeasure:
        grid = self.terms[0][1].grid
        out = FiniteSignedMeasure(grid, ())
        for t, mc in self.terms:
            out = out + t * mc.measure()
        return out


def find_cycle_vector(
    points: Sequence[GridPoint], grid: ProductGrid
) -> tuple[Fraction, ...] | None:
    """Some nowhere-zero kernel vector on the given points, or None.

    Starts from the first kernel basis vector and greedily adds each further
    basis vector with the smallest positive integer multiple that avoids
    cancelling any coordinate already covered. A coordinate left at zero by
    every basis vector vanishes on the whole kernel, so no cycle vector
    exists at all. Deterministic for a fixed input order.
    """
    pts = [grid.check_point(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate point")
    basis = kernel_basis(incidence_matrix(pts, grid))
    if not basis:
        return None
    m = len(pts)
    for j in range(m):
        if all(b[j] == 0 for b in basis):
            return None
    v = list(basis[0])
    for b in basis[1:]:
        forbidden = set()
        for vj, bj in zip(v, b):
            if bj != 0 and vj != 0:
                ratio = -vj / bj
                if ratio > 0 and ratio.denominator == 1:
                    forbidden.add(int(ratio))
        c = 1
        while c in forbidden:
            c += 1
        v = [vj + c * bj for vj, bj in zip(v, b)]
    return tuple(v)


def integer_certificate(weights: Sequence[Fraction]) -> IntegerCertificate:
    """Scale rational cycle weights by the lcm of denominators, then divide
    by the gcd, keeping signs."""
    ws = [Fraction(w) for w in weights]
    if not ws or any(w == 0 for w in ws):
        raise ValueError("weights must be nonzero")
    scale = lcm(*(w.denominator for w in ws))
    ints = [int(w * scale) for w in ws]
    g = gcd(*ints)
    return IntegerCertificate(tuple(x // g for x in ints))


def to_golomb_form(
    points: Sequence[GridPoint], cert: IntegerCertificate, grid: ProductGrid
) -> GolombCycle:
    """Expand an integer-weighted cycle into its two-part multiset form:
    each point repeated |n_i| times, positives in b, negatives in c."""
    if len(points) != len(cert.entries):
        raise ValueError("points and certificate length mismatch")
    b: list[GridPoint] = []
    c: list[GridPoint] = []
    for p, n_i in zip(points, cert.entries):
        (b if n_i > 0 else c).extend([tuple(p)] * abs(n_i))
    return GolombCycle(grid, tuple(b), tuple(c))


def from_golomb_form(gc: GolombCycle) -> tuple[tuple[GridPoint, ...], IntegerCertificate]:
    """Collapse a two-part form back to distinct points with signed
    multiplicities, b points first (in order of first appearance), then c
    points. The multiplicity vector is reduced to gcd 1."""
    counts: dict[GridPoint, int] = {}
    order: list[GridPoint] = []
    for p in gc.b_part:
        if p not in counts:
            order.append(p)
        counts[p] = counts.get(p, 0) + 1
    for p in gc.c_part:
        if p not in counts:
            order.append(p)
        counts[p] = counts.get(p, 0) - 1
    entries = [counts[p] for p in order]
    g = gcd(*entries)
    entries = [e // g for e in entries]
    return tuple(order), IntegerCertificate(tuple(entries))


def _sorted_by_index(
    points: Iterable[GridPoint], grid: ProductGrid
) -> tuple[GridPoint, ...]:
    return tuple(sorted((grid.check_point(p) for p in points), key=lambda p: point_index(grid, p)))


def _minimal_from_sorted(
    points: tuple[GridPoint, ...], grid: ProductGrid
) -> MinimalCycle | None:
    basis = kernel_basis(incidence_matrix(points, grid))
    if len(basis) != 1 or any(x == 0 for x in basis[0]):
        return None
    return _normalized_cycle(points, basis[0], grid)


def _normalized_cycle(
    points: tuple[GridPoint, ...], vec: Sequence[Fraction], grid: ProductGrid
) -> MinimalCycle:
    total = sum(abs(x) for x in vec)
    lam = [x / total for x in vec]
    if lam[0] < 0:
        lam = [-x for x in lam]
    return MinimalCycle(CycleVectorPair(grid, points, tuple(lam)))


def is_minimal(points: Sequence[GridPoint], grid: ProductGrid) -> bool:
    """True when the incidence kernel on these points is one dimensional and
    its spanning vector has no zero entry."""
    pts = [grid.check_point(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate point")
    basis = kernel_basis(incidence_matrix(pts, grid))
    return len(basis) == 1 and all(x != 0 for x in basis[0])


def normalize_minimal(points: Sequence[GridPoint], grid: ProductGrid) -> MinimalCycle:
    """Canonical representative of a minimal cycle: points sorted by flat
    index, weights scaled to total mass 1 with the lowest-index weight
    positive. Invariant under permutations of the input."""
    pts = _sorted_by_index(points, grid)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate point")
    mc = _minimal_from_sorted(pts, grid)
    if mc is None:
        raise ValueError("point set is not a minimal cycle")
    return mc


def _has_lonely_point(
    combo: tuple[int, ...], coords: Sequence[GridPoint], n: int
) -> bool:
    """A point alone in one of its (axis, value) classes forces its weight to
    zero, so such subsets can be skipped outright."""
    for axis in range(n):
        counts: dict[int, int] = {}
        for i in combo:
            v = coords[i][axis]
            counts[v] = counts.get(v, 0) + 1
        if 1 in counts.values():
            return True
    return False


# full-grid enumerations are pure functions of (shape, cap); memoize them
_FULL_CACHE: dict[tuple[tuple[int, ...], int], tuple[tuple[MinimalCycle, ...], int]] = {}


def _enumerate(
    grid: ProductGrid,
    points: Sequence[GridPoint] | None,
    max_support: int | None,
    budget: int | None,
) -> tuple[tuple[MinimalCycle, ...], int, bool]:
    """Core subset scan. Returns (cycles, candidates examined, truncated).

    Candidates are counted after the lonely-point prune; the scan stops and
    reports truncation as soon as the count would exceed the budget.
    """
    if points is None:
        pts = tuple(grid.points())
        full = True
    else:
        pts = _sorted_by_index(points, grid)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate point")
        full = len(pts) == grid.volume
    if not pts:
        return (), 0, False
    rank = matrix_rank(incidence_matrix(pts, grid))
    cap = rank + 1 if max_support is None else max_support
    cap = min(cap, len(pts))

    key = (grid.factor_sizes, cap)
    if full:
        cached = _FULL_CACHE.get(key)
        if cached is not None:
            cycles, candidates = cached
            if budget is not None and candidates > budget:
                return (), candidates, True
            return cycles, candidates, False

    found: list[MinimalCycle] = []
    found_supports: list[frozenset[int]] = []
    candidates = 0
    for size in range(2, cap + 1):
        for combo in combinations(range(len(pts)), size):
            if _has_lonely_point(combo, pts, grid.n):
                continue
            candidates += 1
            if budget is not None and candidates > budget:
                return tuple(found), candidates, True
            cset = set(combo)
            if any(s <= cset for s in found_supports):
                continue  # proper supersets of a minimal cycle are never minimal
            subset = tuple(pts[i] for i in combo)
            mc = _minimal_from_sorted(subset, grid)
            if mc is not None:
                found.append(mc)
                found_supports.append(frozenset(combo))
    result = tuple(found)
    if full:
        _FULL_CACHE[key] = (result, candidates)
    return result, candidates, False


def enumerate_minimal_cycles(
    grid: ProductGrid,
    points: Sequence[GridPoint] | None = None,
    max_support: int | None = None,
) -> tuple[MinimalCycle, ...]:
    """All minimal cycles supported inside the given point set (the whole
    grid by default), in deterministic order: by support size, then by the
    lexicographic tuple of flat indices.

    Supports larger than rank(incidence) + 1 cannot occur, so that is the
    default cap; pass max_support to override.
    """
    cycles, _, _ = _enumerate(grid, points, max_support, None)
    return cycles


def extract_extreme_cycle(mu: FiniteSignedMeasure) -> MinimalCycle:
    """One minimal cycle inside the support of an annihilating measure, with
    weights matching the measure's signs.

    Write the unknown weights as lambda_j = sigma_j * beta_j with sigma the
    sign pattern of mu. The feasible set {beta >= 0, incidence.diag(sigma).
    beta = 0, sum beta = 1} is a nonempty polytope (mu itself, scaled, lies
    in it) and any vertex of it is supported on a minimal cycle: were the
    restricted kernel more than one dimensional, a direction inside the
    support would perturb the vertex both ways. The exact simplex returns a
    basic solution, i.e. a vertex.
    """
    if mu.is_zero():
        raise ValueError("cannot extract a cycle from the zero measure")
    if not is_orthogonal(mu):
        raise ValueError("measure does not annihilate separable sums")
    support = [p for p, _ in mu.atoms]
    signs = [1 if m > 0 else -1 for _, m in mu.atoms]
    inc = incidence_matrix(support, mu.grid)
    rows = []
    for r in range(inc.rows):
        rows.append([inc.at(r, j) * signs[j] for j in range(inc.cols)])
    rows.append([Fraction(1)] * len(support))
    relations = ["="] * inc.rows + ["="]
    rhs = [Fraction(0)] * inc.rows + [Fraction(1)]
    lp = LpProblem.build(
        objective=[0] * len(support),
        rows=rows,
        relations=relations,
        rhs=rhs,
        sense="min",
        lower=[0] * len(support),
    )
    sol = solve_lp(lp)
    assert sol.status == "optimal"
    pts = []
    lam = []
    for j, beta in enumerate(sol.primal):
        if beta > 0:
            pts.append(support[j])
            lam.append(signs[j] * beta)
    return MinimalCycle(CycleVectorPair(mu.grid, tuple(pts), tuple(lam)))


def decompose(mu: FiniteSignedMeasure) -> Decomposition:
    """Write a total-variation-1 annihilating measure as a convex combination
    of minimal-cycle measures.

    Each round extracts a sign-compatible minimal cycle from the residual and
    subtracts the largest multiple that keeps every residual mass on the same
    side of zero; that zeroes at least one atom, so there are at most
    support-size many terms, and sign compatibility makes the total
    variations add up, so the weights sum to 1 exactly.
    """
    if total_variation(mu) != 1:
        raise ValueError("measure must have total variation 1")
    if not is_orthogonal(mu):
        raise ValueError("measure does not annihilate separable sums")
    residual = mu
    terms: list[tuple[Fraction, MinimalCycle]] = []
    while not residual.is_zero():
        mc = extract_extreme_cycle(residual)
        t = min(
            abs(residual.mass_at(p)) / abs(w)
            for p, w in zip(mc.points, mc.weights)
        )
        terms.append((t, mc))
        residual = residual - t * mc.measure()
    dec = Decomposition(tuple(terms))
    assert dec.combined() == mu
    return dec


def pair_to_json(pair: CycleVectorPair) -> dict:
    return {
        "points": [list(p) for p in pair.points],
        "lambda": [format_rat(w) for w in pair.weights],
    }


def pair_from_json(grid: ProductGrid, obj: object) -> CycleVectorPair:
    if not isinstance(obj, dict) or "points" not in obj or "lambda" not in obj:
        raise ValueError('cycle JSON needs "points" and "lambda" keys')
    points = obj["points"]
    lams = obj["lambda"]
    if not isinstance(points, list) or not isinstance(lams, list):
        raise ValueError('"points" and "lambda" must be lists')
    return CycleVectorPair(
        grid,
        tuple(tuple(p) for p in points),
        tuple(parse_rat(w) for w in lams),
    )


def golomb_to_json(gc: GolombCycle) -> dict:
    return {
        "b": [list(p) for p in gc.b_part],
        "c": [list(p) for p in gc.c_part],
    }


def golomb_from_json(grid: ProductGrid, obj: object) -> GolombCycle:
    if not isinstance(obj, dict) or "b" not in obj or "c" not in obj:
        raise ValueError('two-part cycle JSON needs "b" and "c" keys')
    return GolombCycle(
        grid,
        tuple(tuple(p) for p in obj["b"]),
        tuple(tuple(p) for p in obj["c"]),
    )
