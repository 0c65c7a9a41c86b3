"""Dense bit-packed linear algebra over F2.

BinaryMatrix stores each row as machine words (uint64, little-endian bit
order within a word).  All elimination kernels work word-parallel with
XOR row operations; pivot selection is leftmost-column, first-nonzero-row,
so rref/rank/kernel results are deterministic.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

_WORD = 64


def _nwords(cols: int) -> int:
    return max(1, (cols + _WORD - 1) // _WORD)


class BinaryMatrix:
    """Bit-packed matrix over F2, immutable from the caller's perspective.

    Bits outside the rows x cols window are kept at zero so that packed
    words can be compared and popcounted directly.
    """

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        if words is None:
            words = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        self.words = words

    # -- construction -------------------------------------------------

    @classmethod
    def from_dense(cls, arr) -> "BinaryMatrix":
        a = np.atleast_2d(np.asarray(arr, dtype=np.uint8) & 1)
        rows, cols = a.shape
        if cols == 0 or rows == 0:
            return cls(rows, cols)
        pad = _nwords(cols) * _WORD - cols
        if pad:
            a = np.concatenate([a, np.zeros((rows, pad), dtype=np.uint8)], axis=1)
        packed = np.packbits(a, axis=1, bitorder="little")
        return cls(rows, cols, np.ascontiguousarray(packed).view(np.uint64).copy())

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        rows = list(rows)
        if not rows:
            return cls(0, cols if cols is not None else 0)
        return cls.from_dense(np.array(rows, dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        m = cls(n, n)
        for i in range(n):
            m.words[i, i >> 6] = np.uint64(1) << np.uint64(i & 63)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols)

    # -- element access -----------------------------------------------

    def to_dense(self) -> np.ndarray:
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=np.uint8)
        bits = np.unpackbits(self.words.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.cols].copy()

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def _set(self, i: int, j: int, v: int = 1) -> None:
        # internal builder use only; instances are treated as immutable once shared
        bit = np.uint64(1) << np.uint64(j & 63)
        if v:
            self.words[i, j >> 6] |= bit
        else:
            self.words[i, j >> 6] &= ~bit

    def row_support(self, i: int) -> list[int]:
        return [j for j in range(self.cols) if self.get(i, j)]

    def copy(self) -> "BinaryMatrix":
        return BinaryMatrix(self.rows, self.cols, self.words.copy())

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.words.any()

    def row_weights(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros(0, dtype=np.int64)
        return np.bitwise_count(self.words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0, dtype=np.int64)

    def max_row_weight(self) -> int:
        w = self.row_weights()
        return int(w.max()) if w.size else 0

    def max_col_weight(self) -> int:
        w = self.col_weights()
        return int(w.max()) if w.size else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.words, other.words)
        )

    def __hash__(self):
        raise TypeError("BinaryMatrix is not hashable")

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols}, weight={int(self.row_weights().sum())})"

    # -- structural ops -----------------------------------------------

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix.from_dense(self.to_dense().T)

    def kron(self, other: "BinaryMatrix") -> "BinaryMatrix":
        a = self.to_dense()
        b = other.to_dense()
        return BinaryMatrix.from_dense(np.kron(a, b))

    def permute_rows(self, perm: Sequence[int]) -> "BinaryMatrix":
        perm = np.asarray(perm, dtype=np.intp)
        if perm.shape != (self.rows,) or sorted(perm.tolist()) != list(range(self.rows)):
            raise ValueError("not a permutation of the rows")
        return BinaryMatrix(self.rows, self.cols, self.words[perm].copy())

    def permute_cols(self, perm: Sequence[int]) -> "BinaryMatrix":
        perm = np.asarray(perm, dtype=np.intp)
        if perm.shape != (self.cols,) or sorted(perm.tolist()) != list(range(self.cols)):
            raise ValueError("not a permutation of the columns")
        dense = self.to_dense()
        out = np.zeros_like(dense)
        out[:, perm] = dense
        return BinaryMatrix.from_dense(out)

    def submatrix(self, row_idx: Iterable[int] | None, col_idx: Iterable[int] | None) -> "BinaryMatrix":
        dense = self.to_dense()
        if row_idx is not None:
            dense = dense[np.asarray(list(row_idx), dtype=np.intp)]
        if col_idx is not None:
            dense = dense[:, np.asarray(list(col_idx), dtype=np.intp)]
        return BinaryMatrix.from_dense(dense.reshape(dense.shape[0], -1))

    # -- algebra ------------------------------------------------------

    def mul(self, other: "BinaryMatrix") -> "BinaryMatrix":
        """GF(2) matrix product self @ other."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = BinaryMatrix(self.rows, other.cols)
        dense = self.to_dense()
        for i in range(self.rows):
            supp = np.nonzero(dense[i])[0]
            if supp.size:
                out.words[i] = np.bitwise_xor.reduce(other.words[supp], axis=0)
        return out

    def add(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return BinaryMatrix(self.rows, self.cols, self.words ^ other.words)

    def rref(self, with_transform: bool = False):
        """Reduced row-echelon form.

        Returns (R, pivots) or, with with_transform, (R, pivots, T) where
        T is the invertible row-operation matrix with T @ self == R.
        """
        work = self.words.copy()
        aug = BinaryMatrix.identity(self.rows).words if with_transform else None
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            word, bit = c >> 6, np.uint64(1) << np.uint64(c & 63)
            colbits = (work[:, word] & bit) != 0
            below = np.nonzero(colbits[r:])[0]
            if below.size == 0:
                continue
            p = r + int(below[0])
            if p != r:
                work[[r, p]] = work[[p, r]]
                if aug is not None:
                    aug[[r, p]] = aug[[p, r]]
            colbits = (work[:, word] & bit) != 0
            colbits[r] = False
            hit = np.nonzero(colbits)[0]
            if hit.size:
                work[hit] ^= work[r]
                if aug is not None:
                    aug[hit] ^= aug[r]
            pivots.append(c)
            r += 1
        R = BinaryMatrix(self.rows, self.cols, work)
        if with_transform:
            return R, pivots, BinaryMatrix(self.rows, self.rows, aug)
        return R, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "BinaryMatrix":
        """Rows form a basis of the right kernel; row count = cols - rank."""
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        dense = R.to_dense()
        out = np.zeros((len(free), self.cols), dtype=np.uint8)
        for t, fcol in enumerate(free):
            out[t, fcol] = 1
            for prow, pcol in enumerate(pivots):
                out[t, pcol] = dense[prow, fcol]
        return BinaryMatrix.from_dense(out.reshape(len(free), -1)) if free else BinaryMatrix(0, self.cols)

    def row_space_contains(self, vec: "BinaryMatrix") -> bool:
        """True iff every row of vec lies in the row space of self."""
        stacked = vstack([self, vec])
        return stacked.rank() == self.rank()


# -- free functions ----------------------------------------------------


def hstack(mats: Sequence[BinaryMatrix]) -> BinaryMatrix:
    mats = [m for m in mats]
    if not mats:
        return BinaryMatrix(0, 0)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row count mismatch in hstack")
    cols = sum(m.cols for m in mats)
    if rows == 0 or cols == 0:
        return BinaryMatrix(rows, cols)
    dense = np.concatenate([m.to_dense() for m in mats], axis=1)
    return BinaryMatrix.from_dense(dense)


def vstack(mats: Sequence[BinaryMatrix]) -> BinaryMatrix:
    mats = [m for m in mats]
    if not mats:
        return BinaryMatrix(0, 0)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column count mismatch in vstack")
    out = BinaryMatrix(sum(m.rows for m in mats), cols)
    r = 0
    for m in mats:
        if m.rows:
            out.words[r : r + m.rows, : m.words.shape[1]] = m.words
        r += m.rows
    return out


def block_diag(mats: Sequence[BinaryMatrix]) -> BinaryMatrix:
    mats = [m for m in mats]
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    dense = np.zeros((rows, cols), dtype=np.uint8)
    r = c = 0
    for m in mats:
        dense[r : r + m.rows, c : c + m.cols] = m.to_dense()
        r += m.rows
        c += m.cols
    return BinaryMatrix.from_dense(dense.reshape(rows, -1)) if rows and cols else BinaryMatrix(rows, cols)


def kron(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    return a.kron(b)


def rank(m: BinaryMatrix) -> int:
    return m.rank()


def kernel_basis(m: BinaryMatrix) -> BinaryMatrix:
    return m.kernel_basis()


# -- text and alist formats -------------------------------------------


def write_text(m: BinaryMatrix) -> str:
    """Text matrix format: first line "rows cols", then rows of 0/1."""
    lines = [f"{m.rows} {m.cols}"]
    dense = m.to_dense()
    for i in range(m.rows):
        lines.append(" ".join(str(int(v)) for v in dense[i]))
    return "\n".join(lines) + "\n"


def read_text(text: str) -> BinaryMatrix:
    toks = text.split()
    if len(toks) < 2:
        raise ValueError("matrix text: missing 'rows cols' header")
    rows, cols = int(toks[0]), int(toks[1])
    vals = toks[2:]
    if len(vals) != rows * cols:
        raise ValueError(f"matrix text: expected {rows * cols} entries, got {len(vals)}")
    dense = np.array([int(v) for v in vals], dtype=np.uint8).reshape(rows, cols)
    if np.any(dense > 1):
        raise ValueError("matrix text: entries must be 0/1")
    return BinaryMatrix.from_dense(dense)


def write_alist(m: BinaryMatrix) -> str:
    """MacKay alist format (1-based indices, zero padded)."""
    dense = m.to_dense()
    mrows, ncols = m.rows, m.cols
    col_supp = [list(np.nonzero(dense[:, j])[0] + 1) for j in range(ncols)]
    row_supp = [list(np.nonzero(dense[i, :])[0] + 1) for i in range(mrows)]
    maxc = max((len(s) for s in col_supp), default=0)
    maxr = max((len(s) for s in row_supp), default=0)
    lines = [f"{ncols} {mrows}", f"{maxc} {maxr}"]
    lines.append(" ".join(str(len(s)) for s in col_supp))
    lines.append(" ".join(str(len(s)) for s in row_supp))
    for s in col_supp:
        lines.append(" ".join(str(v) for v in s + [0] * (maxc - len(s))))
    for s in row_supp:
        lines.append(" ".join(str(v) for v in s + [0] * (maxr - len(s))))
    return "\n".join(lines) + "\n"


def read_alist(text: str) -> BinaryMatrix:
    """Read MacKay alist, accepting both zero-padded and unpadded bodies."""
    toks = [int(t) for t in text.split()]
    if len(toks) < 4:
        raise ValueError("alist: truncated header")
    ncols, mrows, maxc, maxr = toks[:4]
    pos = 4
    col_w = toks[pos : pos + ncols]
    pos += ncols
    row_w = toks[pos : pos + mrows]
    pos += mrows
    body = len(toks) - pos
    padded = body == ncols * maxc + mrows * maxr
    if not padded and body != sum(col_w) + sum(row_w):
        raise ValueError("alist: body length matches neither padded nor unpadded layout")
    dense = np.zeros((mrows, ncols), dtype=np.uint8)
    for j in range(ncols):
        width = maxc if padded else col_w[j]
        for v in toks[pos : pos + width]:
            if v:
                dense[v - 1, j] = 1
        pos += width
    # the row section is redundant with the column section; skip it
    return BinaryMatrix.from_dense(dense)
