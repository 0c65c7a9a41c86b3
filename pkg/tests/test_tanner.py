import math

import numpy as np

from wtred import fixtures
from wtred.classical import repetition_check
from wtred.css import css_new
from wtred.classical_reduction import ReductionOptions, reduce_full
from wtred.gf2 import BinaryMatrix
from wtred.quantum_reduction import CopyVariant, _copy_counts, copying
from wtred.tanner import (
    copying_new_4cycles,
    count_4cycles,
    count_4cycles_brute,
    from_classical,
    from_css,
    girth,
    to_dot,
)


def random_css(rng, n=8, mx=3, mz=3):
    """Random commuting pair: hx rows drawn from the kernel of hz."""
    while True:
        hz = BinaryMatrix.from_dense(rng.random((mz, n)) < 0.5)
        ker = hz.kernel_basis()
        if ker.rows == 0:
            continue
        picks = (rng.random((mx, ker.rows)) < 0.5).astype(np.uint8)
        hx = BinaryMatrix.from_dense((picks @ ker.to_dense()) % 2)
        if hx.row_weights().min() > 0:
            return css_new(hx, hz)


def test_from_classical_shapes():
    g = from_classical(repetition_check(3))
    assert g.n_checks == 2 and g.n_vars == 3
    assert len(g.edges) == 4
    assert girth(g) == math.inf


def test_from_css_structure():
    c = css_new(BinaryMatrix.from_rows([[1, 1, 1, 1]]),
                BinaryMatrix.from_rows([[1, 1, 0, 0], [1, 0, 1, 0]]))
    g = from_css(c)
    assert g.n_checks == 3 and g.n_vars == 4
    assert g.check_types == ["X", "Z", "Z"]
    assert g.check_degrees().tolist() == [4, 2, 2]


def test_degree_sums_match_weight():
    rng = np.random.default_rng(0)
    h = BinaryMatrix.from_dense(rng.random((5, 9)) < 0.4)
    g = from_classical(h)
    assert g.check_degrees().sum() == h.row_weights().sum()
    assert g.var_degrees().tolist() == h.col_weights().tolist()


def test_girth_four_cycle():
    h = BinaryMatrix.from_rows([[1, 1], [1, 1]])
    assert girth(from_classical(h)) == 4


def test_girth_multiedge_two_cycle():
    g = from_classical(BinaryMatrix.from_rows([[1, 0]]))
    g.edges.append((0, 0))  # parallel edge
    assert girth(g) == 2


def test_girth_type_filter():
    c = css_new(BinaryMatrix.from_rows([[1, 1, 1, 1]]),
                BinaryMatrix.from_rows([[1, 1, 0, 0], [1, 0, 1, 0]]))
    g = from_css(c)
    assert girth(g, only_type="X") == math.inf  # single X check
    assert girth(g) == 4  # X-Z 4-cycles are unavoidable


def test_count_4cycles_trivial():
    g = from_classical(BinaryMatrix.from_rows([[1, 1]]))
    counts = count_4cycles(g)
    assert counts == (0, 0, 0, 0)


def test_count_matches_brute_force_random():
    rng = np.random.default_rng(1)
    for _ in range(15):
        c = random_css(rng, n=7)
        g = from_css(c)
        assert count_4cycles(g) == count_4cycles_brute(g)


def test_count_matches_brute_with_multiedges():
    g = from_classical(BinaryMatrix.from_rows([[1, 1, 0], [1, 1, 1]]))
    g.edges.append((0, 0))
    g.edges.append((1, 2))
    assert count_4cycles(g) == count_4cycles_brute(g)


def test_copying_new_cycle_counts_qrm():
    hx, hz = fixtures.qrm4()
    c = css_new(hx, hz)
    expect = {"original": (738, 168), "reduced": (468, 96), "targeted": (45, 10)}
    for kind, want in expect.items():
        variant = CopyVariant(kind, 3 if kind == "targeted" else None)
        counts = _copy_counts(c.hx.col_weights(), variant)
        assert copying_new_4cycles(c, counts) == want


def test_copying_counts_match_output_census():
    # cycles through two copies of one qubit, counted on the real output graph
    rng = np.random.default_rng(2)
    for _ in range(10):
        c = random_css(rng, n=6)
        variant = CopyVariant("reduced")
        counts = _copy_counts(c.hx.col_weights(), variant)
        out = copying(c, variant)
        base = np.concatenate([[0], np.cumsum(counts)])
        owner = np.zeros(out.n, dtype=int)
        for i in range(c.n):
            owner[base[i] : base[i + 1]] = i
        g = from_css(out)
        m = g.multiplicity_matrix()
        z_rows = [i for i, t in enumerate(g.check_types) if t == "Z"]
        x_rows = [i for i, t in enumerate(g.check_types) if t == "X"]
        z_same = 0
        for a in range(len(z_rows)):
            for b in range(a + 1, len(z_rows)):
                common = np.nonzero(m[z_rows[a]] * m[z_rows[b]])[0]
                for p in range(len(common)):
                    for q in range(p + 1, len(common)):
                        if owner[common[p]] == owner[common[q]]:
                            z_same += 1
        cross_same = 0
        for a in x_rows:
            for b in z_rows:
                common = np.nonzero(m[a] * m[b])[0]
                for p in range(len(common)):
                    for q in range(p + 1, len(common)):
                        if owner[common[p]] == owner[common[q]]:
                            cross_same += 1
        assert (z_same, cross_same) == copying_new_4cycles(c, counts)


def test_classical_reduction_never_decreases_girth():
    rng = np.random.default_rng(3)
    for _ in range(12):
        h = BinaryMatrix.from_dense(rng.random((4, 9)) < 0.5)
        g0 = girth(from_classical(h))
        g1 = girth(from_classical(reduce_full(h, ReductionOptions())))
        assert g1 >= g0


def test_dot_export_styles():
    c = css_new(BinaryMatrix.from_rows([[1, 1, 1, 1]]),
                BinaryMatrix.from_rows([[1, 1, 0, 0], [1, 0, 1, 0]]))
    dot = to_dot(from_css(c))
    assert "shape=square" in dot
    assert "style=filled" in dot  # Z checks filled
    assert "shape=circle" in dot
    assert dot.count(" -- ") == 8
