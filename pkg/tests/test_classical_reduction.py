import numpy as np
import pytest

from wtred import fixtures
from wtred.classical import LinearCode, min_distance_exact
from wtred.classical_reduction import (
    ReductionOptions,
    reduce_base_full,
    reduce_base_rows,
    reduce_cols,
    reduce_full,
    reduce_rows,
    weight_violations,
)
from wtred.gf2 import BinaryMatrix
from wtred.ringpoly import lift_matrix

SEC42_INPUT = BinaryMatrix.from_rows(
    [
        [1, 1, 1, 1, 0, 0],
        [0, 0, 1, 1, 1, 1],
    ]
)

SEC42_PERMUTED_INPUT = BinaryMatrix.from_rows(
    [
        [1, 0, 1, 0, 1, 1],
        [0, 1, 1, 1, 1, 0],
    ]
)

SEC42_H = BinaryMatrix.from_rows(
    [
        [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1],
    ]
)

SEC42_H_PRIME = BinaryMatrix.from_rows(
    [
        [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    ]
)


def exact_distance(h: BinaryMatrix) -> int:
    return min_distance_exact(LinearCode(h), budget=h.cols)


def test_threshold_floor_rejected():
    with pytest.raises(ValueError):
        ReductionOptions(row_threshold=2)


def test_fixpoint_when_all_rows_light():
    h = BinaryMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    assert reduce_rows(h, ReductionOptions()) == h


def test_zero_matrix_unchanged():
    h = BinaryMatrix.zeros(3, 5)
    assert reduce_full(h, ReductionOptions()) == h


def test_sec42_worked_example_plain():
    assert reduce_rows(SEC42_INPUT, ReductionOptions()) == SEC42_H


def test_sec42_worked_example_permuted_input():
    assert reduce_rows(SEC42_PERMUTED_INPUT, ReductionOptions()) == SEC42_H_PRIME


def test_sec42_distances_differ():
    assert exact_distance(SEC42_H) == 3
    assert exact_distance(SEC42_H_PRIME) == 4


def test_fixture_633_plain_gives_934():
    h = fixtures.h_633()
    red = reduce_full(h, ReductionOptions())
    assert (red.rows, red.cols) == (6, 9)
    c = LinearCode(red)
    assert c.k == 3
    assert exact_distance(red) == 4
    assert red.max_row_weight() <= 3 and red.max_col_weight() <= 3


def test_fixture_633_compressed_gives_73x():
    h = fixtures.h_633()
    red = reduce_full(h, ReductionOptions(compressed=True))
    assert (red.rows, red.cols) == (4, 7)
    assert LinearCode(red).k == 3
    assert exact_distance(red) >= 3
    assert red.max_row_weight() <= 3 and red.max_col_weight() <= 3


def test_hamming_plain_and_compressed_shapes():
    # Table row for the [7,4,3] input: HGP lengths 400 and 136 need 12x16 and 6x10
    h = fixtures.h_743()
    plain = reduce_full(h, ReductionOptions())
    comp = reduce_full(h, ReductionOptions(compressed=True))
    assert (plain.rows, plain.cols) == (12, 16)
    assert (comp.rows, comp.cols) == (6, 10)
    assert LinearCode(plain).k == 4 and LinearCode(comp).k == 4


def test_row_then_col_order():
    rng = np.random.default_rng(0)
    h = BinaryMatrix.from_dense(rng.random((4, 8)) < 0.6)
    opts = ReductionOptions()
    manual = reduce_cols(reduce_rows(h, opts, np.random.default_rng(0)), opts, np.random.default_rng(0))
    # reduce_full shares one rng stream across both passes, so only shapes align
    full = reduce_full(h, opts)
    assert manual.rows == full.rows and manual.cols == full.cols


def test_dimension_preserved_random():
    rng = np.random.default_rng(42)
    for _ in range(30):
        m = rng.integers(2, 6)
        n = rng.integers(m + 1, 14)
        h = BinaryMatrix.from_dense(rng.random((m, n)) < 0.5)
        for opts in (ReductionOptions(), ReductionOptions(compressed=True)):
            red = reduce_full(h, opts)
            assert LinearCode(red).k == LinearCode(h).k


def test_distance_never_decreases_random():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 20:
        m = int(rng.integers(2, 5))
        n = int(rng.integers(m + 2, 12))
        h = BinaryMatrix.from_dense(rng.random((m, n)) < 0.55)
        c = LinearCode(h)
        if c.k == 0 or c.k > 10:
            continue
        d = exact_distance(h)
        if d is None:
            continue
        for opts in (ReductionOptions(), ReductionOptions(compressed=True), ReductionOptions(permute=True, seed=checked)):
            red = reduce_full(h, opts)
            assert exact_distance(red) >= d
        checked += 1


def test_permuted_runs_keep_invariants():
    h = fixtures.h_633()
    d = exact_distance(h)
    for seed in range(8):
        red = reduce_full(h, ReductionOptions(permute=True, seed=seed))
        assert LinearCode(red).k == 3
        assert exact_distance(red) >= d


def test_redundant_checks_tolerated():
    h = BinaryMatrix.from_rows(
        [
            [1, 1, 1, 1, 0],
            [0, 1, 1, 0, 1],
            [1, 0, 0, 1, 1],  # sum of the first two
        ]
    )
    assert LinearCode(h).k == 5 - 2
    red = reduce_full(h, ReductionOptions())
    assert LinearCode(red).k == 3
    assert exact_distance(red) >= exact_distance(h)


def test_weight_violation_report():
    h = BinaryMatrix.from_rows([[1, 1, 1, 1, 1], [1, 0, 0, 0, 0]])
    v = weight_violations(h, ReductionOptions())
    assert v == {"rows": [0], "cols": []}
    red = reduce_full(h, ReductionOptions())
    assert weight_violations(red, ReductionOptions()) == {"rows": [], "cols": []}


# -- quasi-cyclic -------------------------------------------------------


def test_base_item1_plain_rows_and_cols():
    red = reduce_base_full(fixtures.base_b1(), ReductionOptions())
    lifted = lift_matrix(red.matrix)
    c = LinearCode(lifted)
    assert c.n == 130 and c.k == 27
    assert lifted.max_row_weight() <= 3 and lifted.max_col_weight() <= 3
    assert not red.diagnostics


def test_base_item1_compressed():
    red = reduce_base_full(fixtures.base_b1(), ReductionOptions(compressed=True))
    lifted = lift_matrix(red.matrix)
    c = LinearCode(lifted)
    assert c.n == 78 and c.k == 27
    assert lifted.max_row_weight() <= 3 and lifted.max_col_weight() <= 3


def test_base_mixed_entries_reduced():
    red = reduce_base_rows(fixtures.base_mixed(), ReductionOptions())
    lifted = lift_matrix(red.matrix)
    c = LinearCode(lifted)
    assert c.n == 414 and c.k == 47
    assert lifted.max_row_weight() <= 3 and lifted.max_col_weight() <= 3
    assert not red.diagnostics


def test_base_irreducible_entry_diagnostic():
    from wtred.ringpoly import BaseMatrix

    a = BaseMatrix.from_strings(5, [["1+x", "1+x^2", "1+x^3", "1"]])
    red = reduce_base_rows(a, ReductionOptions())
    assert any("irreducible" in d for d in red.diagnostics)
    # output still returned with the dimension preserved
    assert LinearCode(lift_matrix(red.matrix)).k == LinearCode(lift_matrix(a)).k


def test_base_item1_reduced_distances_exact():
    plain = reduce_base_full(fixtures.base_b1(), ReductionOptions())
    c = LinearCode(lift_matrix(plain.matrix))
    assert min_distance_exact(c, budget=c.n) == 12
    comp = reduce_base_full(fixtures.base_b1(), ReductionOptions(compressed=True))
    cc = LinearCode(lift_matrix(comp.matrix))
    assert min_distance_exact(cc, budget=cc.n) == 8


def test_base_item1_permuted_trials_no_worse():
    from wtred.classical import min_distance_upper

    for seed in range(3):
        red = reduce_base_full(fixtures.base_b1(), ReductionOptions(permute=True, seed=seed))
        c = LinearCode(lift_matrix(red.matrix))
        assert c.n == 130 and c.k == 27
        assert min_distance_upper(c, trials=400, seed=seed) >= 6  # never below the input distance
