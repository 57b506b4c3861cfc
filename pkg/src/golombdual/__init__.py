"""Exact best uniform approximation by separable sums on finite product
grids, with minimal-projection-cycle duality certificates."""

from .linalg import (
    LpProblem,
    LpSolution,
    Rat,
    RatMatrix,
    format_rat,
    kernel_basis,
    matrix_rank,
    parse_rat,
    solve_lp,
)
from .grids import (
    GridPoint,
    ProductGrid,
    SeparableSum,
    TabulatedFunction,
    evaluate,
    function_from_csv,
    function_from_json,
    function_to_json,
    incidence_matrix,
    point_index,
    point_of,
    residual,
    sup_norm,
    tabulate,
)
from .measures import (
    FiniteSignedMeasure,
    golomb_measure,
    integrate,
    is_orthogonal,
    marginal,
    measure_from_json,
    measure_from_pair,
    measure_to_json,
    total_variation,
)
from .cycles import (
    CycleVectorPair,
    Decomposition,
    GolombCycle,
    IntegerCertificate,
    MinimalCycle,
    decompose,
    enumerate_minimal_cycles,
    extract_extreme_cycle,
    find_cycle_vector,
    from_golomb_form,
    golomb_from_json,
    golomb_to_json,
    integer_certificate,
    is_minimal,
    normalize_minimal,
    pair_from_json,
    pair_to_json,
    to_golomb_form,
)
from .chebyshev import (
    ApproximationResult,
    GolombReport,
    best_error,
    cycle_functional,
    optimal_witness_from_dual,
    report_to_json,
    verify_golomb,
)
from .bolts import (
    Bolt,
    ClosedBolt,
    bolt_from_json,
    bolt_supremum,
    bolt_to_json,
    closed_bolt_measure,
    cycle_to_closed_bolts,
    is_bolt,
    is_closed_bolt,
)
from .cli import RunConfig, main, run

__version__ = "0.1.0"

__all__ = [
    "ApproximationResult",
    "Bolt",
    "ClosedBolt",
    "CycleVectorPair",
    "Decomposition",
    "FiniteSignedMeasure",
    "GolombCycle",
    "GolombReport",
    "GridPoint",
    "IntegerCertificate",
    "LpProblem",
    "LpSolution",
    "MinimalCycle",
    "ProductGrid",
    "Rat",
    "RatMatrix",
    "RunConfig",
    "SeparableSum",
    "TabulatedFunction",
    "best_error",
    "bolt_from_json",
    "bolt_supremum",
    "bolt_to_json",
    "closed_bolt_measure",
    "cycle_functional",
    "cycle_to_closed_bolts",
    "decompose",
    "enumerate_minimal_cycles",
    "evaluate",
    "extract_extreme_cycle",
    "find_cycle_vector",
    "format_rat",
    "from_golomb_form",
    "function_from_csv",
    "function_from_json",
    "function_to_json",
    "golomb_from_json",
    "golomb_measure",
    "golomb_to_json",
    "incidence_matrix",
    "integer_certificate",
    "integrate",
    "is_bolt",
    "is_closed_bolt",
    "is_minimal",
    "is_orthogonal",
    "kernel_basis",
    "main",
    "marginal",
    "matrix_rank",
    "measure_from_json",
    "measure_from_pair",
    "measure_to_json",
    "normalize_minimal",
    "optimal_witness_from_dual",
    "pair_from_json",
    "pair_to_json",
    "parse_rat",
    "point_index",
    "point_of",
    "report_to_json",
    "residual",
    "run",
    "solve_lp",
    "sup_norm",
    "tabulate",
    "to_golomb_form",
    "total_variation",
    "verify_golomb",
]
