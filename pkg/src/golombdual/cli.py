"""Command-line interface.

Exit codes: 0 on success (for verify: duality confirmed), 1 when a
verification is negative or the enumeration budget was exceeded, 2 on input
errors. Output is built in memory and written only on success, so a failing
run never leaves a partial file. The gen command uses random.Random (the
documented Mersenne Twister), so output is byte-identical for a given seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .bolts import bolt_to_json, closed_bolt_measure, cycle_to_closed_bolts
from .chebyshev import best_error, report_to_json, verify_golomb
from .cycles import (
    decompose,
    enumerate_minimal_cycles,
    integer_certificate,
    pair_to_json,
    to_golomb_form,
)
from .grids import (
    ProductGrid,
    TabulatedFunction,
    function_from_csv,
    function_from_json,
    function_to_json,
)
from .linalg import format_rat
from .measures import integrate, measure_from_json, measure_to_json


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    max_support: int | None = None
    seed: int = 0
    shape: tuple[int, ...] | None = None
    value_range: int = 10


def _parse_shape(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise ValueError(f"bad shape {text!r}; expected AxBxC") from None
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"bad shape {text!r}; sizes must be positive")
    return sizes


def _load_function(path: str) -> TabulatedFunction:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".csv"):
        return function_from_csv(text)
    return function_from_json(json.loads(text))


def _emit(config: RunConfig, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_error(config: RunConfig) -> int:
    f = _load_function(config.input)
    result = best_error(f)
    payload = {
        "shape": list(f.grid.factor_sizes),
        "error": format_rat(result.error),
        "best_g": [[format_rat(v) for v in table] for table in result.best_g.tables],
        "optimal_measure": measure_to_json(result.optimal_measure),
    }
    _emit(config, payload)
    return 0


def _cmd_verify(config: RunConfig) -> int:
    f = _load_function(config.input)
    report = verify_golomb(f, max_support=config.max_support)
    payload = report_to_json(report)
    payload["shape"] = list(f.grid.factor_sizes)
    _emit(config, payload)
    return 0 if report.equal else 1


def _cmd_cycles(config: RunConfig) -> int:
    if config.shape is not None:
        grid = ProductGrid(config.shape)
    elif config.input:
        grid = _load_function(config.input).grid
    else:
        raise ValueError("cycles needs --shape or --input")
    cycles = enumerate_minimal_cycles(grid, max_support=config.max_support)
    payload = {
        "shape": list(grid.factor_sizes),
        "cycles": [pair_to_json(c.pair) for c in cycles],
    }
    _emit(config, payload)
    return 0


def _cmd_decompose(config: RunConfig) -> int:
    with open(config.input, "r", encoding="utf-8") as fh:
        mu = measure_from_json(json.load(fh))
    dec = decompose(mu)
    payload = {
        "shape": list(mu.grid.factor_sizes),
        "terms": [
            {"weight": format_rat(t), "cycle": pair_to_json(c.pair)}
            for t, c in dec.terms
        ],
    }
    _emit(config, payload)
    return 0


def _cmd_bolts(config: RunConfig) -> int:
    f = _load_function(config.input)
    if f.grid.n != 2:
        raise ValueError("bolts requires a two-axis grid")
    result = best_error(f)
    best = Fraction(0)
    witness_bolts: list[dict] = []
    for cycle in enumerate_minimal_cycles(f.grid, max_support=config.max_support):
        gc = to_golomb_form(cycle.points, integer_certificate(cycle.weights), f.grid)
        bolts = cycle_to_closed_bolts(gc)
        value = max(
            (abs(integrate(f, closed_bolt_measure(cb))) for cb in bolts),
            default=Fraction(0),
        )
        if value > best:
            best = value
            witness_bolts = [bolt_to_json(cb) for cb in bolts]
    payload = {
        "shape": list(f.grid.factor_sizes),
        "error": format_rat(result.error),
        "bolt_supremum": format_rat(best),
        "equal": best == result.error,
        "witness_bolts": witness_bolts if best == result.error and best > 0 else [],
    }
    _emit(config, payload)
    return 0


def _cmd_gen(config: RunConfig) -> int:
    if config.shape is None:
        raise ValueError("gen needs --shape")
    grid = ProductGrid(config.shape)
    rng = random.Random(config.seed)
    r = config.value_range
    values = tuple(
        Fraction(rng.randint(-r, r)) for _ in range(grid.volume)
    )
    _emit(config, function_to_json(TabulatedFunction(grid, values)))
    return 0


_COMMANDS = {
    "error": _cmd_error,
    "verify": _cmd_verify,
    "cycles": _cmd_cycles,
    "decompose": _cmd_decompose,
    "bolts": _cmd_bolts,
    "gen": _cmd_gen,
}


def run(config: RunConfig) -> int:
    handler = _COMMANDS.get(config.command)
    if handler is None:
        print(f"unknown command: {config.command}", file=sys.stderr)
        return 2
    try:
        return handler(config)
    except (ValueError, OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="golombdual",
        description=(
            "Exact best approximation by sums of univariate functions on "
            "finite grids, with minimal-cycle duality certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--output", help="write JSON here instead of stdout")
        return p

    p = add("error", "best approximation error, best g, optimal dual measure")
    p.add_argument("--input", required=True, help="function file (JSON, or CSV for two axes)")

    p = add("verify", "check error == minimal-cycle supremum")
    p.add_argument("--input", required=True)
    p.add_argument("--max-support", type=int, default=None)

    p = add("cycles", "enumerate minimal cycles of a grid")
    p.add_argument("--input", help="take the grid from this function file")
    p.add_argument("--shape", help="grid shape like 3x3x2")
    p.add_argument("--max-support", type=int, default=None)

    p = add("decompose", "decompose an annihilating measure into minimal cycles")
    p.add_argument("--input", required=True, help="measure JSON file")

    p = add("bolts", "closed-bolt supremum report (two-axis grids)")
    p.add_argument("--input", required=True)
    p.add_argument("--max-support", type=int, default=None)

    p = add("gen", "generate a random integer-valued function file")
    p.add_argument("--shape", required=True, help="grid shape like 3x3x2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=10, dest="value_range",
                   help="values are uniform integers in [-range, range]")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    shape = None
    if getattr(args, "shape", None):
        try:
            shape = _parse_shape(args.shape)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    config = RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        max_support=getattr(args, "max_support", None),
        seed=getattr(args, "seed", 0),
        shape=shape,
        value_range=getattr(args, "value_range", 10),
    )
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
