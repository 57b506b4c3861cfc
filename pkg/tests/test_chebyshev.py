"""Best uniform approximation by separable sums and the duality checks."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from golombdual import (
    ProductGrid,
    best_error,
    cycle_functional,
    enumerate_minimal_cycles,
    integrate,
    is_orthogonal,
    normalize_minimal,
    optimal_witness_from_dual,
    report_to_json,
    residual,
    sup_norm,
    tabulate,
    total_variation,
    verify_golomb,
)

from conftest import (
    CUBE,
    FIVE_POINTS,
    SQUARE,
    random_separable,
    random_table,
    table,
)

XY = table((2, 2), [0, 0, 0, 1])  # f(x, y) = x * y on {0, 1}^2


class TestBestError:
    def test_separable_input_has_zero_error(self):
        rng = random.Random(1)
        for shape in ((2, 2), (3, 3), (2, 2, 2)):
            grid = ProductGrid(shape)
            f = tabulate(random_separable(rng, grid))
            result = best_error(f)
            assert result.error == 0
            assert sup_norm(residual(f, result.best_g)) == 0

    def test_product_table(self):
        result = best_error(XY)
        assert result.error == Fraction(1, 4)
        assert sup_norm(residual(XY, result.best_g)) == Fraction(1, 4)
        assert result.optimal_measure.atoms == (
            ((0, 0), Fraction(1, 4)),
            ((0, 1), Fraction(-1, 4)),
            ((1, 0), Fraction(-1, 4)),
            ((1, 1), Fraction(1, 4)),
        )

    def test_2x2_closed_form(self):
        # On a 2x2 grid the only cycle is the square, so the error is
        # |a - b - c + d| / 4 for the table (a, b; c, d).
        rng = random.Random(2)
        for _ in range(50):
            a, b, c, d = (rng.randint(-20, 20) for _ in range(4))
            f = table((2, 2), [a, b, c, d])
            assert best_error(f).error == Fraction(abs(a - b - c + d), 4)

    def test_dual_measure_certificate(self):
        rng = random.Random(3)
        for shape in ((3, 3), (2, 2, 2), (3, 3, 2)):
            f = random_table(rng, ProductGrid(shape))
            result = best_error(f)
            mu = result.optimal_measure
            assert is_orthogonal(mu)
            assert total_variation(mu) <= 1
            assert integrate(f, mu) == result.error
            res = residual(f, result.best_g)
            for point, mass in mu.atoms:
                value = res.value_at(point)
                assert abs(value) == result.error
                assert (value > 0) == (mass > 0)

    def test_error_zero_only_for_separable(self):
        assert best_error(XY).error > 0


class TestCycleFunctional:
    def test_separable_gives_zero_on_every_cycle(self):
        rng = random.Random(4)
        grid = ProductGrid((3, 3))
        f = tabulate(random_separable(rng, grid))
        for cycle in enumerate_minimal_cycles(grid):
            assert cycle_functional(f, cycle) == 0

    def test_product_table_on_the_square(self):
        mc = normalize_minimal(SQUARE, ProductGrid((2, 2)))
        assert cycle_functional(XY, mc) == Fraction(1, 4)

    def test_indicator_against_five_point_cycle(self):
        mc = normalize_minimal(FIVE_POINTS, CUBE)
        values = [0] * CUBE.volume
        values[0] = 1  # mass sits at (0, 0, 0)
        f = table((2, 2, 2), values)
        assert cycle_functional(f, mc) == Fraction(1, 3)

    def test_orientation_independent(self):
        mc = normalize_minimal(SQUARE, ProductGrid((2, 2)))
        rng = random.Random(6)
        f = random_table(rng, ProductGrid((2, 2)))
        assert cycle_functional(f, mc) == abs(integrate(f, mc.measure()))

    def test_never_exceeds_best_error(self):
        rng = random.Random(7)
        grid = ProductGrid((3, 3))
        for _ in range(10):
            f = random_table(rng, grid)
            error = best_error(f).error
            for cycle in enumerate_minimal_cycles(grid):
                assert cycle_functional(f, cycle) <= error


class TestVerifyGolomb:
    def test_separable_reports_equality_at_zero(self):
        rng = random.Random(8)
        f = tabulate(random_separable(rng, ProductGrid((3, 3))))
        report = verify_golomb(f)
        assert report.equal
        assert report.error == 0
        assert report.cycle_supremum == 0
        assert report.witness is None
        assert report.enumerated

    def test_product_table_reports_square_witness(self):
        report = verify_golomb(XY)
        assert report.equal
        assert report.error == Fraction(1, 4)
        assert report.cycle_supremum == Fraction(1, 4)
        assert report.cycles_examined == 1
        assert report.witness == normalize_minimal(SQUARE, ProductGrid((2, 2)))

    def test_random_instances_verify(self):
        rng = random.Random(9)
        for shape in ((3, 3), (2, 2, 2), (3, 2, 2)):
            for _ in range(5):
                f = random_table(rng, ProductGrid(shape))
                report = verify_golomb(f)
                assert report.equal
                assert report.cycles_examined > 0

    def test_budget_exhaustion_reports_not_enumerated(self):
        rng = random.Random(10)
        f = random_table(rng, ProductGrid((3, 3)))
        report = verify_golomb(f, budget=1)
        assert not report.enumerated
        assert not report.equal
        assert report.cycle_supremum is None
        assert report.witness is None
        assert report.cycles_examined == 0

    def test_support_cap_can_miss_the_witness(self):
        report = verify_golomb(XY, max_support=3)
        assert report.enumerated
        assert not report.equal
        assert report.cycle_supremum == 0

    def test_report_json(self):
        obj = report_to_json(verify_golomb(XY))
        assert obj["error"] == "1/4"
        assert obj["cycle_supremum"] == "1/4"
        assert obj["equal"] is True
        assert obj["enumerated"] is True
        assert obj["cycles_examined"] == 1
        assert obj["witness"]["lambda"] == ["1/4", "-1/4", "-1/4", "1/4"]


class TestOptimalWitness:
    def test_product_table_witness_is_the_square(self):
        cycle, dec = optimal_witness_from_dual(XY)
        assert cycle == normalize_minimal(SQUARE, ProductGrid((2, 2)))
        assert len(dec.terms) == 1
        assert dec.terms[0][0] == 1
        assert cycle_functional(XY, cycle) == Fraction(1, 4)

    def test_witness_achieves_the_error_on_random_tables(self):
        rng = random.Random(11)
        grid = ProductGrid((3, 3))
        checked = 0
        while checked < 10:
            f = random_table(rng, grid)
            result = best_error(f)
            if result.error == 0:
                continue
            cycle, dec = optimal_witness_from_dual(f, result)
            assert cycle_functional(f, cycle) == result.error
            assert sum(w for w, _ in dec.terms) == 1
            assert any(c == cycle for _, c in dec.terms)
            checked += 1

    def test_scaling_doubles_the_functional(self):
        cycle, _ = optimal_witness_from_dual(XY)
        doubled = XY * 2
        cycle2, _ = optimal_witness_from_dual(doubled)
        assert cycle_functional(doubled, cycle2) == Fraction(1, 2)
        assert cycle_functional(doubled, cycle) == Fraction(1, 2)

    def test_rejects_zero_error(self):
        f = table((2, 2), [0, 0, 0, 0])
        with pytest.raises(ValueError):
            optimal_witness_from_dual(f)


class TestInvariance:
    def test_translation_by_separable_sums(self):
        rng = random.Random(12)
        grid = ProductGrid((3, 3))
        f = random_table(rng, grid)
        base = best_error(f).error
        for _ in range(3):
            g = tabulate(random_separable(rng, grid))
            assert best_error(f + g).error == base

    def test_scaling(self):
        rng = random.Random(13)
        grid = ProductGrid((2, 2, 2))
        f = random_table(rng, grid)
        base = best_error(f).error
        assert best_error(f * -2).error == 2 * base
        assert best_error(f * Fraction(1, 2)).error == base / 2
