"""Hot loops for distance search, compiled with numba.

All kernels operate on bit-packed uint64 row words.  Randomized kernels
derive one splitmix64 stream per trial from (seed, trial), and trials are
combined with an order-free min reduction, so results do not depend on
the numba thread count.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, inline="always")
def _popcnt64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return (x * _H01) >> np.uint64(56)


@njit(cache=True, inline="always")
def _splitmix64(state):
    state = state + np.uint64(0x9E3779B97F4A7C15)
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True)
def gray_span_min_weight(gen):
    """Min Hamming weight over all nonzero F2 combinations of the rows of gen."""
    k, nw = gen.shape
    acc = np.zeros(nw, dtype=np.uint64)
    best = np.uint64(0xFFFFFFFFFFFFFFFF)
    total = np.int64(1) << k
    for t in range(1, total):
        b = 0
        while not (t >> b) & 1:
            b += 1
        w = np.uint64(0)
        for j in range(nw):
            acc[j] ^= gen[b, j]
            w += _popcnt64(acc[j])
        if w < best:
            best = w
    return int(best)


@njit(cache=True)
def gray_coset_min_weight(gen, n_stab):
    """Min weight over combinations of gen rows using >= 1 row past n_stab.

    Rows 0..n_stab-1 span a subspace to quotient out (e.g. stabilizers);
    the remaining rows are coset generators.
    """
    k, nw = gen.shape
    acc = np.zeros(nw, dtype=np.uint64)
    best = np.uint64(0xFFFFFFFFFFFFFFFF)
    total = np.int64(1) << k
    incl = np.int64(0)
    for t in range(1, total):
        b = 0
        while not (t >> b) & 1:
            b += 1
        incl ^= np.int64(1) << b
        for j in range(nw):
            acc[j] ^= gen[b, j]
        if incl >> n_stab:
            w = np.uint64(0)
            for j in range(nw):
                w += _popcnt64(acc[j])
            if w < best:
                best = w
    return int(best)


@njit(cache=True, inline="always")
def _rref_random_order(work, order, cols):
    """In-place RREF processing pivot columns in the given order."""
    rows = work.shape[0]
    r = 0
    for t in range(cols):
        c = order[t]
        word = c >> 6
        bit = U1 << np.uint64(c & 63)
        piv = -1
        for i in range(r, rows):
            if work[i, word] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(work.shape[1]):
                tmp = work[r, j]
                work[r, j] = work[piv, j]
                work[piv, j] = tmp
        for i in range(rows):
            if i != r and (work[i, word] & bit):
                for j in range(work.shape[1]):
                    work[i, j] ^= work[r, j]
        r += 1
        if r == rows:
            break


@njit(cache=True, parallel=True)
def isd_min_weights(w0, nw_data, cols, trials, seed):
    """Information-set search: per-trial min row weight after randomized RREF.

    w0 has nw_data data words per row, optionally followed by tag words.
    A row is a candidate when its tag words are nonzero, or, with no tag
    words, when its data words are nonzero.  Returns one weight per trial.
    """
    rows, nw_total = w0.shape
    has_tag = nw_total > nw_data
    out = np.full(trials, np.int64(1) << 62, dtype=np.int64)
    for t in prange(trials):
        state = np.uint64(seed) ^ (np.uint64(t) * np.uint64(0xD1B54A32D192ED03))
        order = np.arange(cols, dtype=np.int64)
        for i in range(cols - 1, 0, -1):
            state, z = _splitmix64(state)
            j = np.int64(z % np.uint64(i + 1))
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        work = w0.copy()
        _rref_random_order(work, order, cols)
        best = np.int64(1) << 62
        for i in range(rows):
            ok = False
            if has_tag:
                for j in range(nw_data, nw_total):
                    if work[i, j]:
                        ok = True
                        break
            else:
                for j in range(nw_data):
                    if work[i, j]:
                        ok = True
                        break
            if ok:
                w = np.int64(0)
                for j in range(nw_data):
                    w += np.int64(_popcnt64(work[i, j]))
                if w < best:
                    best = w
        out[t] = best
    return out
