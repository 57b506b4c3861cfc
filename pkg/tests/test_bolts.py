"""Two-axis bolts: detection, closing, measures, and cycle conversion."""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest

from golombdual import (
    Bolt,
    ClosedBolt,
    GolombCycle,
    ProductGrid,
    best_error,
    bolt_from_json,
    bolt_supremum,
    bolt_to_json,
    closed_bolt_measure,
    cycle_to_closed_bolts,
    enumerate_minimal_cycles,
    integer_certificate,
    is_bolt,
    is_closed_bolt,
    is_orthogonal,
    tabulate,
    to_golomb_form,
    total_variation,
)

from conftest import SQUARE, random_separable, random_table, table

GRID22 = ProductGrid((2, 2))
GRID33 = ProductGrid((3, 3))
GRID44 = ProductGrid((4, 4))

STAIRCASE = ((0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0))

# Walks around two squares glued through the column x = 0; the vertex (0, 1)
# appears twice, once with each sign, so its masses cancel.
REVISIT = (
    (0, 0),
    (0, 1),
    (1, 1),
    (1, 0),
    (2, 0),
    (2, 1),
    (0, 1),
    (0, 3),
    (3, 3),
    (3, 0),
)


class TestIsBolt:
    def test_two_vertices_sharing_x(self):
        assert is_bolt(GRID22, ((0, 0), (0, 1))) == "shared-x-first"

    def test_two_vertices_sharing_y(self):
        assert is_bolt(GRID22, ((0, 0), (1, 0))) == "shared-y-first"

    def test_no_shared_coordinate(self):
        assert is_bolt(GRID22, ((0, 0), (1, 1))) is None

    def test_square_path(self):
        assert is_bolt(GRID22, SQUARE) == "shared-x-first"

    def test_alternation_must_continue(self):
        assert is_bolt(GRID33, ((0, 0), (0, 1), (0, 2))) is None

    def test_consecutive_duplicates_rejected(self):
        assert is_bolt(GRID22, ((0, 0), (0, 0))) is None

    def test_single_vertex(self):
        assert is_bolt(GRID22, ((0, 0),)) == "shared-x-first"

    def test_empty(self):
        assert is_bolt(GRID22, ()) is None

    def test_requires_two_axes(self):
        with pytest.raises(ValueError):
            is_bolt(ProductGrid((2, 2, 2)), ((0, 0, 0), (0, 0, 1)))
        with pytest.raises(ValueError):
            is_bolt(ProductGrid((4,)), ((0,), (1,)))


class TestIsClosedBolt:
    def test_square(self):
        assert is_closed_bolt(GRID22, SQUARE)

    def test_two_vertices_cannot_close(self):
        assert not is_closed_bolt(GRID22, ((0, 0), (0, 1)))

    def test_staircase_closes(self):
        assert is_closed_bolt(GRID33, STAIRCASE)

    def test_odd_length_never_closes(self):
        assert not is_closed_bolt(GRID33, ((0, 0), (0, 1), (1, 1)))

    def test_open_path_fails(self):
        assert not is_closed_bolt(GRID33, ((0, 0), (0, 1), (1, 1), (1, 2)))

    def test_revisiting_walk_closes(self):
        assert is_closed_bolt(GRID44, REVISIT)


class TestBoltTypes:
    def test_bolt_records_start_axis(self):
        bolt = Bolt(GRID22, ((0, 0), (0, 1)), "shared-x-first")
        assert bolt.start_axis == "shared-x-first"

    def test_bolt_rejects_wrong_axis_label(self):
        with pytest.raises(ValueError):
            Bolt(GRID22, ((0, 0), (0, 1)), "shared-y-first")

    def test_bolt_rejects_non_bolt(self):
        with pytest.raises(ValueError):
            Bolt(GRID22, ((0, 0), (1, 1)), "shared-x-first")

    def test_closed_bolt_rejects_open_path(self):
        bolt = Bolt(GRID33, ((0, 0), (0, 1), (1, 1), (1, 2)), "shared-x-first")
        with pytest.raises(ValueError):
            ClosedBolt(bolt)

    def test_closed_bolt_accepts_square(self):
        cb = ClosedBolt(Bolt(GRID22, SQUARE, "shared-x-first"))
        assert cb.vertices == SQUARE


def closed(grid: ProductGrid, vertices) -> ClosedBolt:
    axis = is_bolt(grid, vertices)
    return ClosedBolt(Bolt(grid, tuple(vertices), axis))


class TestClosedBoltMeasure:
    def test_square_alternates_quarters(self):
        mu = closed_bolt_measure(closed(GRID22, SQUARE))
        assert mu.atoms == (
            ((0, 0), Fraction(1, 4)),
            ((0, 1), Fraction(-1, 4)),
            ((1, 0), Fraction(-1, 4)),
            ((1, 1), Fraction(1, 4)),
        )
        assert total_variation(mu) == 1

    def test_orientation_flip_negates(self):
        rotated = SQUARE[1:] + SQUARE[:1]
        mu = closed_bolt_measure(closed(GRID22, SQUARE))
        nu = closed_bolt_measure(closed(GRID22, rotated))
        assert nu == -mu

    def test_staircase_measure(self):
        mu = closed_bolt_measure(closed(GRID33, STAIRCASE))
        assert total_variation(mu) == 1
        assert is_orthogonal(mu)
        assert mu.mass_at((0, 0)) == Fraction(1, 6)
        assert mu.mass_at((2, 0)) == Fraction(-1, 6)

    def test_cancelling_revisit_drops_variation_below_one(self):
        mu = closed_bolt_measure(closed(GRID44, REVISIT))
        assert mu.mass_at((0, 1)) == 0
        assert total_variation(mu) == Fraction(4, 5)
        assert is_orthogonal(mu)

    def test_always_orthogonal(self):
        rng = random.Random(19)
        for cycle in rng.sample(enumerate_minimal_cycles(GRID44), 15):
            gc = to_golomb_form(
                cycle.points, integer_certificate(cycle.weights), GRID44
            )
            for cb in cycle_to_closed_bolts(gc):
                assert is_orthogonal(closed_bolt_measure(cb))


class TestCycleToClosedBolts:
    def test_square_converts_to_one_bolt(self):
        gc = GolombCycle(GRID22, ((0, 0), (1, 1)), ((0, 1), (1, 0)))
        bolts = cycle_to_closed_bolts(gc)
        assert len(bolts) == 1
        assert bolts[0].vertices == ((0, 0), (0, 1), (1, 1), (1, 0))

    def test_disjoint_squares_give_two_bolts(self):
        gc = GolombCycle(
            GRID44,
            ((0, 0), (1, 1), (2, 2), (3, 3)),
            ((0, 1), (1, 0), (2, 3), (3, 2)),
        )
        bolts = cycle_to_closed_bolts(gc)
        assert len(bolts) == 2
        assert bolts[0].vertices == ((0, 0), (0, 1), (1, 1), (1, 0))
        assert bolts[1].vertices == ((2, 2), (2, 3), (3, 3), (3, 2))

    def test_signed_vertex_multisets_reproduce_the_input(self):
        # Two squares overlapping in the column x = 0 force a walk through
        # the doubled point (0, 0) and the doubled point (1, 0).
        gc = GolombCycle(
            ProductGrid((2, 3)),
            ((0, 0), (0, 0), (1, 1), (1, 2)),
            ((0, 1), (0, 2), (1, 0), (1, 0)),
        )
        bolts = cycle_to_closed_bolts(gc)
        plus: Counter = Counter()
        minus: Counter = Counter()
        for cb in bolts:
            for i, vertex in enumerate(cb.vertices):
                (plus if i % 2 == 0 else minus)[vertex] += 1
        assert plus == Counter(gc.b_part)
        assert minus == Counter(gc.c_part)
        for cb in bolts:
            assert is_closed_bolt(cb.grid, cb.vertices)

    def test_single_minimal_cycles_convert_to_single_bolts(self):
        rng = random.Random(23)
        for cycle in rng.sample(enumerate_minimal_cycles(GRID44), 20):
            gc = to_golomb_form(
                cycle.points, integer_certificate(cycle.weights), GRID44
            )
            bolts = cycle_to_closed_bolts(gc)
            assert len(bolts) == 1
            mu = closed_bolt_measure(bolts[0])
            assert mu in (cycle.measure(), -cycle.measure())

    def test_deterministic(self):
        gc = GolombCycle(
            GRID44,
            ((0, 0), (1, 1), (2, 2), (3, 3)),
            ((0, 1), (1, 0), (2, 3), (3, 2)),
        )
        assert cycle_to_closed_bolts(gc) == cycle_to_closed_bolts(gc)

    def test_rejects_other_dimensions(self):
        gc = GolombCycle(
            ProductGrid((2, 2, 2)),
            ((0, 0, 0), (0, 0, 0), (1, 1, 1)),
            ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
        )
        with pytest.raises(ValueError):
            cycle_to_closed_bolts(gc)


class TestBoltSupremum:
    def test_product_table(self):
        f = table((2, 2), [0, 0, 0, 1])
        assert bolt_supremum(f) == Fraction(1, 4)

    def test_separable_gives_zero(self):
        rng = random.Random(25)
        f = tabulate(random_separable(rng, GRID33))
        assert bolt_supremum(f) == 0

    def test_matches_best_error_on_random_tables(self):
        rng = random.Random(26)
        for _ in range(10):
            f = random_table(rng, GRID33)
            assert bolt_supremum(f) == best_error(f).error

    def test_rejects_other_dimensions(self):
        rng = random.Random(27)
        f = random_table(rng, ProductGrid((2, 2, 2)))
        with pytest.raises(ValueError):
            bolt_supremum(f)


class TestBoltJson:
    def test_round_trip_closed(self):
        cb = closed(GRID22, SQUARE)
        obj = bolt_to_json(cb)
        assert obj == {"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]], "closed": True}
        back = bolt_from_json(GRID22, obj)
        assert isinstance(back, ClosedBolt)
        assert back == cb

    def test_round_trip_open(self):
        bolt = Bolt(GRID33, ((0, 0), (0, 1), (1, 1)), "shared-x-first")
        obj = bolt_to_json(bolt)
        assert obj["closed"] is False
        back = bolt_from_json(GRID33, obj)
        assert isinstance(back, Bolt)
        assert back.vertices == bolt.vertices

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            bolt_from_json(GRID22, {"vertices": "zig"})
        with pytest.raises(ValueError):
            bolt_from_json(GRID22, {"closed": True})
