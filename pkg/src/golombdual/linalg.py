"""Exact rational linear algebra: dense matrices, null-space bases, and an
exact two-phase simplex solver.

Everything runs over ``fractions.Fraction``. There is no floating point
anywhere in this package, so every comparison below is a decidable exact
test and results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Literal, Sequence

Rat = Fraction

Relation = Literal["<=", "=", ">="]

# characters occasionally pasted in place of an ASCII minus
_MINUS_VARIANTS = ("−", "–")


def parse_rat(text: str) -> Fraction:
    """Parse a rational from its canonical string form ``p/q`` (or ``p``)."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    cleaned = text.strip()
    for ch in _MINUS_VARIANTS:
        cleaned = cleaned.replace(ch, "-")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rat(value: Fraction | int) -> str:
    """Serialize a rational as ``p/q``, or just ``p`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "RatMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Fraction] = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(v) for v in row)
        return cls(nrows, ncols, tuple(flat))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    """Clear denominators row by row; row scaling does not change the kernel."""
    out: list[list[int]] = []
    for i in range(m.rows):
        row = m.row(i)
        scale = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * scale) for v in row])
    return out


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("fraction-free elimination produced a non-exact division")
    return q


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form over the integers.

    Intermediate entries stay minors of the input, which keeps their size
    polynomial instead of exploding the way naive integer elimination does.
    Returns the nonzero echelon rows and the pivot column indices.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pivot = m[r][c]
        top = m[r]
        for i in range(r + 1, nrows):
            cur = m[i]
            factor = cur[c]
            for j in range(c, ncols):
                cur[j] = _exact_div(pivot * cur[j] - factor * top[j], prev)
        prev = pivot
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale to integer entries with gcd 1 and first nonzero entry positive."""
    scale = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * scale) for x in v]
    g = gcd(*ints) if ints else 0
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    ints = [x // g for x in ints]
    first = next((x for x in ints if x != 0), 1)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def kernel_basis(m: RatMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Deterministic basis of the null space {v : m v = 0}.

    One vector per free column, free columns in ascending index order. Each
    vector comes from back-substitution on the echelon form with the free
    coordinate set to 1, then is scaled to a primitive integer vector whose
    first nonzero entry is positive.
    """
    if m.cols == 0:
        return ()
    ech, pivot_cols = _echelon(_integer_rows(m), m.cols)
    pivot_set = set(pivot_cols)
    basis: list[tuple[Fraction, ...]] = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[r]
            row = ech[r]
            s = Fraction(0)
            for j in range(pc + 1, m.cols):
                if row[j] and v[j]:
                    s += row[j] * v[j]
            if s:
                v[pc] = Fraction(-s, row[pc])
        basis.append(_primitive(v))
    return tuple(basis)


def matrix_rank(m: RatMatrix) -> int:
    if m.cols == 0 or m.rows == 0:
        return 0
    return len(_echelon(_integer_rows(m), m.cols)[1])


def _solve_square(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a nonsingular square system by exact Gaussian elimination."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            raise ArithmeticError("singular system")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        for i in range(n):
            if i != c and m[i][c]:
                factor = m[i][c] / piv
                row, top = m[i], m[c]
                for j in range(c, n + 1):
                    row[j] -= factor * top[j]
    return [m[i][n] / m[i][i] for i in range(n)]


@dataclass(frozen=True)
class LpProblem:
    """A linear program ``sense c.x  subject to  A x rel b`` with optional
    per-variable bounds. Variables without bounds are free."""

    objective: tuple[Fraction, ...]
    matrix: RatMatrix
    relations: tuple[Relation, ...]
    rhs: tuple[Fraction, ...]
    lower: tuple[Fraction | None, ...]
    upper: tuple[Fraction | None, ...]
    sense: Literal["min", "max"] = "min"

    def __post_init__(self) -> None:
        n, m = self.matrix.cols, self.matrix.rows
        if len(self.objective) != n:
            raise ValueError("objective length does not match column count")
        if len(self.relations) != m or len(self.rhs) != m:
            raise ValueError("relations/rhs length does not match row count")
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("bounds length does not match column count")
        if any(rel not in ("<=", "=", ">=") for rel in self.relations):
            raise ValueError("relation must be one of <=, =, >=")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be min or max")

    @classmethod
    def build(
        cls,
        objective: Sequence[Fraction | int],
        rows: Sequence[Sequence[Fraction | int]],
        relations: Sequence[str],
        rhs: Sequence[Fraction | int],
        sense: str = "min",
        lower: Sequence[Fraction | int | None] | None = None,
        upper: Sequence[Fraction | int | None] | None = None,
    ) -> "LpProblem":
        n = len(objective)
        lo = tuple(None if v is None else Fraction(v) for v in (lower or [None] * n))
        up = tuple(None if v is None else Fraction(v) for v in (upper or [None] * n))
        return cls(
            objective=tuple(Fraction(v) for v in objective),
            matrix=RatMatrix.from_rows(rows),
            relations=tuple(relations),  # type: ignore[arg-type]
            rhs=tuple(Fraction(v) for v in rhs),
            lower=lo,
            upper=up,
            sense=sense,  # type: ignore[arg-type]
        )


@dataclass(frozen=True)
class LpSolution:
    """Outcome of ``solve_lp``.

    ``dual`` holds one multiplier per original constraint row. At an optimum
    the pair satisfies complementary slackness, and for bound-free problems
    ``sum(dual[i] * rhs[i])`` equals the objective value exactly.
    """

    status: Literal["optimal", "infeasible", "unbounded"]
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    objective: Fraction | None


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _run_simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    barred: set[int],
) -> str:
    """Bland-rule simplex on an equality-form tableau (rhs in the last cell).

    Bland's rule (lowest eligible index for both the entering column and the
    tie-broken leaving row) guarantees termination without any perturbation.
    """
    nrows = len(tableau)
    ncols = len(tableau[0]) - 1
    z = list(cost)
    for i in range(nrows):
        cb = cost[basis[i]]
        if cb:
            row = tableau[i]
            for j in range(ncols):
                if row[j]:
                    z[j] -= cb * row[j]
    while True:
        enter = next(
            (j for j in range(ncols) if z[j] < 0 and j not in barred), None
        )
        if enter is None:
            return "optimal"
        leave = -1
        best: Fraction | None = None
        for i in range(nrows):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if best is None:
            return "unbounded"
        _pivot(tableau, basis, z, leave, enter)


def _pivot(
    tableau: list[list[Fraction]],
    basis: list[int],
    z: list[Fraction] | None,
    row: int,
    col: int,
) -> None:
    prow = tableau[row]
    piv = prow[col]
    if piv != 1:
        inv = _ONE / piv
        for j in range(len(prow)):
            if prow[j]:
                prow[j] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    for i, cur in enumerate(tableau):
        if i != row and cur[col]:
            factor = cur[col]
            for j in nz:
                cur[j] -= factor * prow[j]
    if z is not None and z[col]:
        factor = z[col]
        for j in nz:
            if j < len(z):
                z[j] -= factor * prow[j]
    basis[row] = col


def solve_lp(problem: LpProblem) -> LpSolution:
    """Exact two-phase simplex with Bland's anti-cycling rule.

    Bounded variables are shifted or reflected onto nonnegative internal
    columns (an upper bound on a lower-bounded variable becomes one extra
    internal row); free variables are split into positive and negative parts.
    Duals are recovered from the optimal basis by solving ``B^T y = c_B``
    against the untouched equality-form matrix, so they are exact and satisfy
    strong duality with the primal.
    """
    n = problem.matrix.cols
    m = problem.matrix.rows
    minimize = problem.sense == "min"
    c_orig = [Fraction(v) for v in problem.objective]
    c_signed = c_orig if minimize else [-v for v in c_orig]

    # variable transforms: x_j = offset_j + sum(sign * z_col)
    terms: list[list[tuple[int, int]]] = []
    offsets: list[Fraction] = []
    synthetic: list[tuple[int, Fraction]] = []  # (internal col, upper rhs)
    ncols_int = 0
    for j in range(n):
        lo, up = problem.lower[j], problem.upper[j]
        if lo is not None and up is not None and up < lo:
            return LpSolution("infeasible", (), (), None)
        if lo is not None:
            terms.append([(ncols_int, 1)])
            offsets.append(lo)
            if up is not None:
                synthetic.append((ncols_int, up - lo))
            ncols_int += 1
        elif up is not None:
            terms.append([(ncols_int, -1)])
            offsets.append(up)
            ncols_int += 1
        else:
            terms.append([(ncols_int, 1), (ncols_int + 1, -1)])
            offsets.append(_ZERO)
            ncols_int += 2

    c_int = [_ZERO] * ncols_int
    for j in range(n):
        for col, sign in terms[j]:
            c_int[col] += c_signed[j] if sign > 0 else -c_signed[j]

    # internal rows: original constraints plus synthetic upper-bound rows
    int_rows: list[list[Fraction]] = []
    int_rels: list[str] = []
    int_rhs: list[Fraction] = []
    for i in range(m):
        row = [_ZERO] * ncols_int
        shift = _ZERO
        for j in range(n):
            a = problem.matrix.at(i, j)
            if a:
                shift += a * offsets[j]
                for col, sign in terms[j]:
                    row[col] += a if sign > 0 else -a
        int_rows.append(row)
        int_rels.append(problem.relations[i])
        int_rhs.append(problem.rhs[i] - shift)
    for col, ub in synthetic:
        row = [_ZERO] * ncols_int
        row[col] = _ONE
        int_rows.append(row)
        int_rels.append("<=")
        int_rhs.append(ub)

    # equality form: flip rows to nonnegative rhs, then slack/artificial columns
    m_eq = len(int_rows)
    flips = [1] * m_eq
    for i in range(m_eq):
        if int_rhs[i] < 0:
            flips[i] = -1
            int_rhs[i] = -int_rhs[i]
            int_rows[i] = [-v for v in int_rows[i]]
            int_rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[int_rels[i]]

    extra_cols: list[tuple[int, Fraction]] = []  # (row, coefficient)
    art_rows: list[int] = []
    col_kinds: list[str] = []
    for i in range(m_eq):
        if int_rels[i] == "<=":
            extra_cols.append((i, _ONE))
            col_kinds.append("slack")
        elif int_rels[i] == ">=":
            extra_cols.append((i, -_ONE))
            col_kinds.append("slack")
            art_rows.append(i)
        else:
            art_rows.append(i)
    slack_count = len(extra_cols)
    total = ncols_int + slack_count + len(art_rows)
    art_cols = {row: ncols_int + slack_count + k for k, row in enumerate(art_rows)}

    tableau: list[list[Fraction]] = []
    for i in range(m_eq):
        row = int_rows[i] + [_ZERO] * (slack_count + len(art_rows)) + [int_rhs[i]]
        tableau.append(row)
    basis = [-1] * m_eq
    for k, (i, coef) in enumerate(extra_cols):
        tableau[i][ncols_int + k] = coef
        if coef > 0 and basis[i] == -1:
            basis[i] = ncols_int + k
    for i, col in art_cols.items():
        tableau[i][col] = _ONE
        basis[i] = col

    # keep a pristine copy of the equality-form matrix for dual recovery
    frozen = [row[:] for row in tableau]

    art_set = set(art_cols.values())
    if art_set:
        cost1 = [_ZERO] * total
        for col in art_set:
            cost1[col] = _ONE
        status = _run_simplex(tableau, basis, cost1, set())
        assert status == "optimal"  # phase 1 is bounded below by 0
        if sum(tableau[i][-1] for i in range(m_eq) if basis[i] in art_set) > 0:
            return LpSolution("infeasible", (), (), None)
        # drive leftover artificials out of the basis where possible
        for i in range(m_eq):
            if basis[i] in art_set:
                j = next(
                    (
                        jj
                        for jj in range(ncols_int + slack_count)
                        if tableau[i][jj]
                    ),
                    None,
                )
                if j is not None:
                    _pivot(tableau, basis, None, i, j)

    cost2 = [_ZERO] * total
    for col in range(ncols_int):
        cost2[col] = c_int[col]
    status = _run_simplex(tableau, basis, cost2, art_set)
    if status == "unbounded":
        return LpSolution("unbounded", (), (), None)

    # primal recovery
    x_int = [_ZERO] * total
    for i in range(m_eq):
        x_int[basis[i]] = tableau[i][-1]
    x = []
    for j in range(n):
        val = offsets[j]
        for col, sign in terms[j]:
            val += x_int[col] if sign > 0 else -x_int[col]
        x.append(val)
    objective = sum((c_orig[j] * x[j] for j in range(n)), _ZERO)

    # dual recovery: solve B^T y = c_B against the pristine columns
    bt = [[frozen[r][basis[i]] for r in range(m_eq)] for i in range(m_eq)]
    cb = [cost2[basis[i]] for i in range(m_eq)]
    y_eq = _solve_square(bt, cb)
    dual = []
    for i in range(m):
        v = y_eq[i] * flips[i]
        dual.append(v if minimize else -v)

    _check_optimum(problem, x, dual, objective)
    return LpSolution("optimal", tuple(x), tuple(dual), objective)


def _check_optimum(
    problem: LpProblem,
    x: list[Fraction],
    dual: list[Fraction],
    objective: Fraction,
) -> None:
    """Internal exactness audit: feasibility, dual signs, complementary slackness."""
    n, m = problem.matrix.cols, problem.matrix.rows
    minimize = problem.sense == "min"
    for j in range(n):
        lo, up = problem.lower[j], problem.upper[j]
        assert lo is None or x[j] >= lo
        assert up is None or x[j] <= up
    for i in range(m):
        lhs = sum(
            (problem.matrix.at(i, j) * x[j] for j in range(n) if problem.matrix.at(i, j)),
            _ZERO,
        )
        rel, b, y = problem.relations[i], problem.rhs[i], dual[i]
        if rel == "<=":
            assert lhs <= b
            assert (y <= 0) if minimize else (y >= 0)
        elif rel == ">=":
            assert lhs >= b
            assert (y >= 0) if minimize else (y <= 0)
        else:
            assert lhs == b
        if y != 0:
            assert lhs == b  # complementary slackness
