"""Best uniform approximation by separable sums, exactly, with duality
certificates.

The distance from f to the separable sums is the optimal value of the linear
program  min t  s.t.  -t <= f(x) - sum_i g_i(x_i) <= t  over all grid points,
solved here in exact rational arithmetic. The dual solution assembles into an
annihilating measure of total variation at most 1 whose integral against f
equals the error; the duality formula says the same value is the supremum of
|integral of f| over normalized minimal-cycle measures, and verify_golomb
checks that equality literally, by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cycles import (
    Decomposition,
    MinimalCycle,
    _enumerate,
    decompose,
    pair_to_json,
)
from .grids import SeparableSum, TabulatedFunction, residual, sup_norm
from .linalg import LpProblem, format_rat, solve_lp
from .measures import (
    FiniteSignedMeasure,
    integrate,
    is_orthogonal,
    total_variation,
)

DEFAULT_ENUM_BUDGET = 1 << 20


@dataclass(frozen=True)
class ApproximationResult:
    """Exact error, a best separable approximation, and an optimal dual
    measure (annihilating, total variation <= 1, integral equal to the
    error)."""

    error: Fraction
    best_g: SeparableSum
    optimal_measure: FiniteSignedMeasure


@dataclass(frozen=True)
class GolombReport:
    """Outcome of the duality check. When the enumeration budget is exceeded
    no verdict is made: enumerated is False, cycle_supremum and witness are
    None, and equal is False."""

    error: Fraction
    cycle_supremum: Fraction | None
    witness: MinimalCycle | None
    cycles_examined: int
    equal: bool
    enumerated: bool = True


def best_error(f: TabulatedFunction) -> ApproximationResult:
    """Distance from f to the separable sums in the uniform norm, via an
    exact LP.

    Variables are t and the table values g_i(value); the gauge freedom of
    shifting constants between axes is removed by pinning g_i(0) = 0 on every
    axis after the first. Each grid point contributes the two rows
    sum g + t >= f(x) and sum g - t <= f(x); the dual measure puts
    (upper multiplier) - (lower multiplier) at x.
    """
    grid = f.grid
    sizes = grid.factor_sizes
    var_of: dict[tuple[int, int], int] = {}
    col = 1  # column 0 is t
    for value in range(sizes[0]):
        var_of[(0, value)] = col
        col += 1
    for axis in range(1, grid.n):
        for value in range(1, sizes[axis]):
            var_of[(axis, value)] = col
            col += 1
    ncols = col

    rows: list[list[Fraction]] = []
    relations: list[str] = []
    rhs: list[Fraction] = []
    for point in grid.points():
        base = [Fraction(0)] * ncols
        for axis, value in enumerate(point):
            j = var_of.get((axis, value))
            if j is not None:
                base[j] = Fraction(1)
        upper = base[:]
        upper[0] = Fraction(1)
        lower = base[:]
        lower[0] = Fraction(-1)
        value_at = f.value_at(point)
        rows.append(upper)
        relations.append(">=")
        rhs.append(value_at)
        rows.append(lower)
        relations.append("<=")
        rhs.append(value_at)

    objective = [Fraction(0)] * ncols
    objective[0] = Fraction(1)
    sol = solve_lp(
        LpProblem.build(objective, rows, relations, rhs, sense="min")
    )
    assert sol.status == "optimal"  # always feasible (g = 0, t = sup|f|) and t >= 0
    error = sol.objective
    assert error is not None and error >= 0

    tables = []
    for axis in range(grid.n):
        table = []
        for value in range(sizes[axis]):
            j = var_of.get((axis, value))
            table.append(sol.primal[j] if j is not None else Fraction(0))
        tables.append(tuple(table))
    best_g = SeparableSum(grid, tuple(tables))

    atoms = []
    for idx, point in enumerate(grid.points()):
        mass = sol.dual[2 * idx] + sol.dual[2 * idx + 1]
        if mass != 0:
            atoms.append((point, mass))
    mu = FiniteSignedMeasure(grid, tuple(atoms))

    res = residual(f, best_g)
    assert sup_norm(res) == error
    assert is_orthogonal(mu)
    assert total_variation(mu) <= 1
    assert integrate(f, mu) == error
    for point, mass in mu.atoms:
        r = res.value_at(point)
        assert abs(r) == error and (r > 0) == (mass > 0)
    return ApproximationResult(error=error, best_g=best_g, optimal_measure=mu)


def cycle_functional(f: TabulatedFunction, cycle: MinimalCycle) -> Fraction:
    """|integral of f| against the cycle's normalized measure."""
    if f.grid != cycle.grid:
        raise ValueError("grid mismatch")
    return abs(integrate(f, cycle.measure()))


def verify_golomb(
    f: TabulatedFunction,
    max_support: int | None = None,
    budget: int | None = DEFAULT_ENUM_BUDGET,
) -> GolombReport:
    """Check the duality formula on f's grid: the best-approximation error
    must equal the maximum of |integral of f| over all minimal cycles.

    Enumeration work is capped by the candidate-subset budget; if exceeded,
    the report says so instead of guessing a verdict.
    """
    result = best_error(f)
    cycles, _, truncated = _enumerate(f.grid, None, max_support, budget)
    if truncated:
        return GolombReport(
            error=result.error,
            cycle_supremum=None,
            witness=None,
            cycles_examined=0,
            equal=False,
            enumerated=False,
        )
    supremum = Fraction(0)
    witness: MinimalCycle | None = None
    for cycle in cycles:
        value = cycle_functional(f, cycle)
        if value > supremum:
            supremum = value
            witness = cycle
    equal = supremum == result.error
    if not (equal and result.error > 0):
        witness = None
    return GolombReport(
        error=result.error,
        cycle_supremum=supremum,
        witness=witness,
        cycles_examined=len(cycles),
        equal=equal,
    )


def optimal_witness_from_dual(
    f: TabulatedFunction, result: ApproximationResult | None = None
) -> tuple[MinimalCycle, Decomposition]:
    """A minimal cycle achieving the error, read off the dual measure.

    When the error is positive the dual measure has total variation exactly 1
    (otherwise scaling it up would beat the optimum), so it decomposes into
    minimal-cycle measures; convexity forces at least one term to achieve the
    full value, and none can exceed it.
    """
    if result is None:
        result = best_error(f)
    if result.error == 0:
        raise ValueError("zero error: every annihilating measure integrates f to 0")
    mu = result.optimal_measure
    assert total_variation(mu) == 1
    dec = decompose(mu)
    best_cycle = None
    best_value = Fraction(-1)
    for _, cycle in dec.terms:
        value = cycle_functional(f, cycle)
        if value > best_value:
            best_value = value
            best_cycle = cycle
    assert best_cycle is not None and best_value == result.error
    return best_cycle, dec


def report_to_json(report: GolombReport) -> dict:
    return {
        "error": format_rat(report.error),
        "cycle_supremum": None
        if report.cycle_supremum is None
        else format_rat(report.cycle_supremum),
        "equal": report.equal,
        "witness": None if report.witness is None else pair_to_json(report.witness.pair),
        "cycles_examined": report.cycles_examined,
        "enumerated": report.enumerated,
    }
