"""Classical linear codes: parameters, exact and randomized minimum distance.

Exact distance auto-selects between full generator-span enumeration (Gray
code walk, feasible for k <= ~28) and weight-limited support enumeration
(meet-in-the-middle on column syndromes), whichever is cheaper for the
requested budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .gf2 import BinaryMatrix
from .ringpoly import BaseMatrix, lift_matrix

INFINITE_DISTANCE = math.inf

SPAN_MAX_K = 28
_SUPPORT_COST_LIMIT = 6e7
_SMALL_SPAN_K = 16  # below this, plain python beats the JIT round trip


class TrivialCodeError(Exception):
    """Raised for k = 0 codes, whose distance is (by convention) infinite."""


@dataclass(frozen=True)
class LinearCode:
    """Linear code given by a parity-check matrix (redundant rows allowed)."""

    h: BinaryMatrix

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def k(self) -> int:
        return self.n - self.h.rank()

    def generator(self) -> BinaryMatrix:
        return self.h.kernel_basis()


@dataclass
class CodeParams:
    n: int
    k: int
    d: int | float | None = None
    d_is_exact: bool = False
    d_upper: int | float | None = None

    def __post_init__(self):
        if self.d_is_exact and self.d is not None:
            self.d_upper = self.d

    def as_dict(self) -> dict:
        def enc(v):
            return "inf" if v == INFINITE_DISTANCE else v

        return {
            "n": self.n,
            "k": self.k,
            "d": enc(self.d),
            "d_is_exact": self.d_is_exact,
            "d_upper": enc(self.d_upper),
        }


def repetition_check(ell: int) -> BinaryMatrix:
    """(ell-1) x ell bidiagonal parity check of the [ell, 1, ell] repetition code."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    dense = np.zeros((ell - 1, ell), dtype=np.uint8)
    for i in range(ell - 1):
        dense[i, i] = dense[i, i + 1] = 1
    return BinaryMatrix.from_dense(dense.reshape(ell - 1, -1)) if ell > 1 else BinaryMatrix(0, 1)


def code_from_base(a: BaseMatrix) -> LinearCode:
    """Quasi-cyclic code with parity check B(A)."""
    return LinearCode(lift_matrix(a))


def _span_min_weight(gen: BinaryMatrix) -> int:
    k = gen.rows
    if k <= _SMALL_SPAN_K:
        rows = gen.words
        acc = np.zeros(rows.shape[1], dtype=np.uint64)
        best = None
        for t in range(1, 1 << k):
            acc = acc ^ rows[(t & -t).bit_length() - 1]
            w = int(np.bitwise_count(acc).sum())
            if best is None or w < best:
                best = w
        return best
    return _kernels.gray_span_min_weight(np.ascontiguousarray(gen.words))


def _support_min_weight(h: BinaryMatrix, budget: int) -> int | None:
    """Lightest nonzero codeword of weight <= budget, by syndrome meet-in-middle."""
    n = h.cols
    syn = h.transpose().words  # row j = syndrome of unit vector e_j, packed
    half = n // 2
    left = list(range(half))
    right = list(range(half, n))

    def subsets(idx: list[int], maxw: int):
        # yields (weight, syndrome bytes) over nonempty subsets, DFS with shared xor
        stack_syn = np.zeros(syn.shape[1], dtype=np.uint64)

        def rec(start: int, depth: int, acc: np.ndarray):
            for p in range(start, len(idx)):
                nxt = acc ^ syn[idx[p]]
                yield depth + 1, nxt
                if depth + 1 < maxw:
                    yield from rec(p + 1, depth + 1, nxt)

        yield from rec(0, 0, stack_syn)

    right_best: dict[bytes, int] = {}
    for w, s in subsets(right, budget):
        key = s.tobytes()
        if key not in right_best or w < right_best[key]:
            right_best[key] = w

    zero_key = np.zeros(syn.shape[1], dtype=np.uint64).tobytes()
    best = right_best.get(zero_key)  # pure-right codewords
    for w, s in subsets(left, budget):
        key = s.tobytes()
        if key == zero_key:
            cand = w  # pure-left codeword
        elif key in right_best:
            cand = w + right_best[key]
        else:
            continue
        if cand <= budget and (best is None or cand < best):
            best = cand
    return best


def _support_cost(n: int, budget: int) -> float:
    half = (n + 1) // 2
    return 2.0 * sum(math.comb(half, a) for a in range(1, min(budget, half) + 1))


def min_distance_exact(c: LinearCode, budget: int) -> int | None:
    """Exact minimum distance if it is <= budget, else None (meaning d > budget).

    Raises TrivialCodeError when k = 0.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    gen = c.generator()
    k = gen.rows
    if k == 0:
        raise TrivialCodeError("k = 0: distance is infinite by convention")
    span_cost = float(2**k) if k <= SPAN_MAX_K else math.inf
    support_cost = _support_cost(c.n, budget)
    if span_cost <= support_cost:
        d = _span_min_weight(gen)
        return d if d <= budget else None
    if support_cost <= _SUPPORT_COST_LIMIT:
        return _support_min_weight(c.h, budget)
    if span_cost is not math.inf:
        d = _span_min_weight(gen)
        return d if d <= budget else None
    raise ValueError(f"exact search infeasible for n={c.n}, k={k}, budget={budget}")


def min_distance_upper(c: LinearCode, trials: int, seed: int) -> int:
    """Randomized information-set upper bound on the minimum distance.

    Random column orders drive the RREF pivot choice; the lightest nonzero
    generator row seen over all trials is returned.  Deterministic for a
    fixed seed, independent of thread count.
    """
    gen = c.generator()
    if gen.rows == 0:
        raise TrivialCodeError("k = 0: distance is infinite by convention")
    base = int(gen.row_weights().min())
    if trials <= 0:
        return base
    weights = _kernels.isd_min_weights(
        np.ascontiguousarray(gen.words), gen.words.shape[1], c.n, trials, np.uint64(seed)
    )
    return min(base, int(weights.min()))


def code_params(c: LinearCode, budget: int | None = None, trials: int = 0, seed: int = 0) -> CodeParams:
    """Parameters with the best distance information obtainable within budget."""
    n, k = c.n, c.k
    if k == 0:
        return CodeParams(n, 0, d=INFINITE_DISTANCE, d_is_exact=True)
    d = None
    exact = False
    if budget is not None:
        try:
            d = min_distance_exact(c, budget)
            exact = d is not None
        except ValueError:
            d = None
    upper = min_distance_upper(c, trials, seed) if trials else None
    if exact:
        return CodeParams(n, k, d=d, d_is_exact=True)
    return CodeParams(n, k, d=None, d_is_exact=False, d_upper=upper)
