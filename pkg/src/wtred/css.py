"""CSS codes, hypergraph and lifted products, logical operators, distances.

Distance search runs two regimes: an exact coset enumeration (Gray-code
walk over stabilizer + logical generators) when the exponent is small
enough, and otherwise a bounded-weight certificate for tiny weights plus
a randomized information-set upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .chain import ChainComplex
from .classical import INFINITE_DISTANCE, LinearCode, min_distance_exact
from .gf2 import BinaryMatrix, hstack, read_text, vstack, write_text
from .ringpoly import BaseMatrix, RingElement, lift_matrix, ring_transpose

EXACT_COSET_LOG2 = 26


class CommutationError(ValueError):
    def __init__(self, row_x: int, row_z: int):
        self.pair = (row_x, row_z)
        super().__init__(f"H_X row {row_x} anticommutes with H_Z row {row_z}")


class CssCode:
    """Pair (H_X, H_Z) with H_X . H_Z^T = 0; parameter caches computed eagerly."""

    def __init__(self, hx: BinaryMatrix, hz: BinaryMatrix):
        if hx.cols != hz.cols:
            raise ValueError(f"H_X has {hx.cols} columns but H_Z has {hz.cols}")
        prod = hx.mul(hz.transpose())
        if not prod.is_zero():
            dense = prod.to_dense()
            i, j = map(int, next(zip(*np.nonzero(dense))))
            raise CommutationError(i, j)
        self.hx = hx
        self.hz = hz
        self.n = hx.cols
        self.rank_x = hx.rank()
        self.rank_z = hz.rank()
        self.k = self.n - self.rank_x - self.rank_z
        self.w_x = hx.max_row_weight()
        self.q_x = hx.max_col_weight()
        self.w_z = hz.max_row_weight()
        self.q_z = hz.max_col_weight()

    @property
    def weights(self) -> tuple[int, int, int, int]:
        return (self.w_x, self.q_x, self.w_z, self.q_z)

    def chain(self) -> ChainComplex:
        """F2^{n_Z} --H_Z^T--> F2^n --H_X--> F2^{n_X}, qubits in the middle."""
        return ChainComplex([self.hx, self.hz.transpose()])

    def __repr__(self) -> str:
        return f"CssCode(n={self.n}, k={self.k}, weights={self.weights})"


def css_new(hx: BinaryMatrix, hz: BinaryMatrix) -> CssCode:
    return CssCode(hx, hz)


def css_from_chain(c: ChainComplex, level: int = 1) -> CssCode:
    """CSS code from consecutive boundary maps: H_X = d_level, H_Z^T = d_{level+1}."""
    hx = c.boundary(level)
    dz = c.boundary(level + 1)
    if hx is None or dz is None:
        raise ValueError("chain complex too short at the requested level")
    return CssCode(hx, dz.transpose())


@dataclass
class CssParams:
    n: int
    k: int
    d_x: int | float | None = None
    d_z: int | float | None = None
    d_x_exact: bool = False
    d_z_exact: bool = False
    d_x_upper: int | float | None = None
    d_z_upper: int | float | None = None
    weights: tuple[int, int, int, int] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def d(self) -> int | float | None:
        if self.d_x is None or self.d_z is None:
            return None
        return min(self.d_x, self.d_z)

    @property
    def d_exact(self) -> bool:
        return self.d is not None and self.d_x_exact and self.d_z_exact

    def as_dict(self) -> dict:
        def enc(v):
            return "inf" if v == INFINITE_DISTANCE else v

        return {
            "n": self.n,
            "k": self.k,
            "d": enc(self.d),
            "d_exact": self.d_exact,
            "d_x": enc(self.d_x),
            "d_z": enc(self.d_z),
            "d_x_exact": self.d_x_exact,
            "d_z_exact": self.d_z_exact,
            "d_x_upper": enc(self.d_x_upper),
            "d_z_upper": enc(self.d_z_upper),
            "weights": list(self.weights) if self.weights else None,
            "notes": self.notes,
        }


# -- product constructions ----------------------------------------------


def hgp(h1: BinaryMatrix, h2: BinaryMatrix) -> CssCode:
    """Hypergraph product; left block is the n1*n2 primary-qubit sector."""
    m1, n1 = h1.rows, h1.cols
    m2, n2 = h2.rows, h2.cols
    eye = BinaryMatrix.identity
    hx = hstack([h1.kron(eye(n2)), eye(m1).kron(h2.transpose())])
    hz = hstack([eye(n1).kron(h2), h1.transpose().kron(eye(m2))])
    return CssCode(hx, hz)


def hgp_square(h: BinaryMatrix) -> CssCode:
    return hgp(h, h)


def hgp_params(h1: BinaryMatrix, h2: BinaryMatrix, budget: int) -> CssParams:
    """Parameters of HGP(h1, h2) from the four classical distances.

    Trivial transpose codes contribute an explicit infinite distance; the
    result is flagged exact only when every finite contribution was found
    exactly within the budget.
    """
    code = hgp(h1, h2)
    sides = []
    for h in (h1, h2, h1.transpose(), h2.transpose()):
        c = LinearCode(h)
        if c.k == 0:
            sides.append((INFINITE_DISTANCE, True))
            continue
        try:
            d = min_distance_exact(c, budget=budget)
        except ValueError:
            d = None
        sides.append((d, d is not None))
    k1 = LinearCode(h1).k
    k2 = LinearCode(h2).k
    k1t = LinearCode(h1.transpose()).k
    k2t = LinearCode(h2.transpose()).k
    assert code.k == k1 * k2 + k1t * k2t
    if all(ok for _, ok in sides):
        d = min(v for v, _ in sides)
        return CssParams(code.n, code.k, d_x=d, d_z=d, d_x_exact=True, d_z_exact=True,
                         weights=code.weights,
                         notes=["distance via classical product formula"])
    known = [v for v, ok in sides if ok]
    upper = min(known) if known else None
    return CssParams(code.n, code.k, d_x_upper=upper, d_z_upper=upper, weights=code.weights,
                     notes=["some classical distances exceeded budget"])


def _base_eye(ell: int, n: int) -> BaseMatrix:
    one = RingElement.one(ell)
    zero = RingElement.zero(ell)
    return BaseMatrix(ell, [[one if i == j else zero for j in range(n)] for i in range(n)])


def _base_kron(a: BaseMatrix, b: BaseMatrix) -> BaseMatrix:
    out = []
    for i in range(a.rows):
        for p in range(b.rows):
            row = []
            for j in range(a.cols):
                for q in range(b.cols):
                    row.append(a.entries[i][j].mul(b.entries[p][q]))
            out.append(row)
    return BaseMatrix(a.ell, out)


def _base_hstack(a: BaseMatrix, b: BaseMatrix) -> BaseMatrix:
    return BaseMatrix(a.ell, [ra + rb for ra, rb in zip(a.entries, b.entries)])


def lifted_product(a1: BaseMatrix, a2: BaseMatrix) -> CssCode:
    """Lifted product LP(A1, A2): lift of the ring-valued product matrices."""
    if a1.ell != a2.ell:
        raise ValueError(f"lift sizes differ: {a1.ell} vs {a2.ell}")
    ell = a1.ell
    ax = _base_hstack(_base_kron(a1, _base_eye(ell, a2.rows)),
                      _base_kron(_base_eye(ell, a1.rows), a2))
    az = _base_hstack(_base_kron(_base_eye(ell, a1.cols), ring_transpose(a2)),
                      _base_kron(ring_transpose(a1), _base_eye(ell, a2.cols)))
    return CssCode(lift_matrix(ax), lift_matrix(az))


def lp_square(a: BaseMatrix) -> CssCode:
    """LP(A) = LP(A, A^T)."""
    return lifted_product(a, ring_transpose(a))


# -- logical operators ---------------------------------------------------


def _coset_reduce(vecs: BinaryMatrix, stab: BinaryMatrix) -> np.ndarray:
    """Reduce each row of vecs modulo the row space of stab (dense output)."""
    r, piv = stab.rref()
    red = vecs.to_dense().copy()
    rd = r.to_dense()
    for idx, c in enumerate(piv):
        mask = red[:, c] == 1
        if mask.any():
            red[mask] ^= rd[idx]
    return red


def logical_basis(c: CssCode) -> tuple[BinaryMatrix, BinaryMatrix]:
    """(X logicals, Z logicals), k rows each, full-rank symplectic pairing."""
    def side(kernel_of: BinaryMatrix, modulo: BinaryMatrix) -> BinaryMatrix:
        ker = kernel_of.kernel_basis()
        if ker.rows == 0:
            return BinaryMatrix(0, c.n)
        red = _coset_reduce(ker, modulo)
        span = BinaryMatrix.from_dense(red.reshape(ker.rows, -1))
        r, piv = span.rref()
        if not piv:
            return BinaryMatrix(0, c.n)
        return BinaryMatrix(len(piv), c.n, r.words[: len(piv)].copy())

    z_log = side(c.hx, c.hz)
    x_log = side(c.hz, c.hx)
    assert x_log.rows == c.k and z_log.rows == c.k
    if c.k:
        pairing = x_log.mul(z_log.transpose())
        assert pairing.rank() == c.k
    return x_log, z_log


# -- distance ------------------------------------------------------------


def _stab_basis(h: BinaryMatrix) -> BinaryMatrix:
    r, piv = h.rref()
    return BinaryMatrix(len(piv), h.cols, r.words[: len(piv)].copy())


def _coset_exact(stab: BinaryMatrix, logicals: BinaryMatrix) -> int:
    gens = vstack([stab, logicals])
    return _kernels.gray_coset_min_weight(np.ascontiguousarray(gens.words), stab.rows)


def _light_logical_search(check: BinaryMatrix, stab: BinaryMatrix, budget: int) -> int | None:
    """Exact min weight over ker(check) \\ rowspace(stab) if it is <= budget (<= 2)."""
    cols = check.transpose()  # row j = syndrome of e_j
    by_syn: dict[bytes, list[int]] = {}
    for j in range(check.cols):
        by_syn.setdefault(cols.words[j].tobytes(), []).append(j)
    zero = np.zeros(cols.words.shape[1], dtype=np.uint64).tobytes()

    def is_logical(support: list[int]) -> bool:
        v = BinaryMatrix(1, check.cols)
        for j in support:
            v._set(0, j)
        return not stab.row_space_contains(v)

    for j in by_syn.get(zero, []):
        if is_logical([j]):
            return 1
    if budget >= 2:
        for group in by_syn.values():
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    if is_logical([group[a], group[b]]):
                        return 2
    return None


def _isd_upper(stab: BinaryMatrix, logicals: BinaryMatrix, trials: int, seed: int) -> int | None:
    if logicals.rows == 0:
        return None
    base = int(logicals.row_weights().min())
    if trials <= 0:
        return base
    nw = stab.words.shape[1]
    k = logicals.rows
    tag_words = (k + 63) // 64
    rows = stab.rows + k
    aug = np.zeros((rows, nw + tag_words), dtype=np.uint64)
    aug[: stab.rows, :nw] = stab.words
    aug[stab.rows :, :nw] = logicals.words
    for i in range(k):
        aug[stab.rows + i, nw + (i >> 6)] = np.uint64(1) << np.uint64(i & 63)
    weights = _kernels.isd_min_weights(aug, nw, stab.cols, trials, np.uint64(seed))
    return min(base, int(weights.min()))


def css_distance(
    c: CssCode,
    budget: int = 2,
    trials: int = 1000,
    seed: int = 0,
    exact_limit_log2: int = EXACT_COSET_LOG2,
) -> CssParams:
    """Distance information for both sides.

    Each side is exact if the coset enumeration fits in 2**exact_limit_log2
    steps or a bounded-weight search resolves it within budget; otherwise a
    seeded information-set upper bound is reported.
    """
    params = CssParams(c.n, c.k, weights=c.weights)
    if c.k == 0:
        params.notes.append("k = 0: no logical operators, distances undefined")
        return params
    x_log, z_log = logical_basis(c)
    sx = _stab_basis(c.hx)
    sz = _stab_basis(c.hz)
    for side, check, stab, logicals in (("z", c.hx, sz, z_log), ("x", c.hz, sx, x_log)):
        exact = None
        lower = 1
        if stab.rows + c.k <= exact_limit_log2:
            exact = _coset_exact(stab, logicals)
        else:
            light_budget = min(budget, 2)
            light = _light_logical_search(check, stab, light_budget)
            if light is not None:
                exact = light
            else:
                lower = light_budget + 1
        upper = _isd_upper(stab, logicals, trials, seed)
        if exact is None and upper is not None and upper == lower:
            # bounded search excluded everything lighter than the witness
            exact = upper
        if side == "z":
            params.d_z, params.d_z_exact = (exact, True) if exact is not None else (None, False)
            params.d_z_upper = exact if exact is not None else upper
        else:
            params.d_x, params.d_x_exact = (exact, True) if exact is not None else (None, False)
            params.d_x_upper = exact if exact is not None else upper
    return params


def certify_min_distance_at_least(c: CssCode, floor: int) -> bool:
    """True when no logical operator of weight < floor exists (floor <= 3)."""
    if floor > 3:
        raise ValueError("certification implemented for floors up to 3 (weights <= 2)")
    x_log, z_log = logical_basis(c)
    sx, sz = _stab_basis(c.hx), _stab_basis(c.hz)
    for check, stab in ((c.hx, sz), (c.hz, sx)):
        found = _light_logical_search(check, stab, floor - 1)
        if found is not None and found < floor:
            return False
    return True


# -- file format -----------------------------------------------------------


def write_css(c: CssCode) -> str:
    """CSS code file: HX block then HZ block, each in the text matrix format."""
    return "HX\n" + write_text(c.hx) + "HZ\n" + write_text(c.hz)


def read_css(text: str) -> CssCode:
    toks = text.split()
    if not toks or toks[0].upper() != "HX":
        raise ValueError("css file must start with an HX block")
    try:
        zi = next(i for i, t in enumerate(toks) if t.upper() == "HZ")
    except StopIteration:
        raise ValueError("css file is missing the HZ block") from None
    hx = read_text(" ".join(toks[1:zi]))
    hz = read_text(" ".join(toks[zi + 1 :]))
    return CssCode(hx, hz)
