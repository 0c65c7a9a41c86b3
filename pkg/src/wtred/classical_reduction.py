"""Classical weight reduction of parity-check matrices.

Row reduction replaces each heavy row by an identity-or-compressed block
paired with a transposed repetition chain on fresh columns; column
reduction is row reduction of the transpose.  Both preserve the code
dimension and never decrease the minimum distance.  The quasi-cyclic
variant applies the same splitting to base-matrix rows over F2[x]/(x^l-1),
keeping ring entries whole and steering multi-term entries to the chain
ends where the weight budget allows it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import BinaryMatrix
from .ringpoly import BaseMatrix, RingElement


@dataclass
class ReductionOptions:
    compressed: bool = False
    permute: bool = False
    seed: int = 0
    row_threshold: int = 3
    col_threshold: int = 3

    def __post_init__(self):
        if self.row_threshold < 3 or self.col_threshold < 3:
            raise ValueError("thresholds below 3 are rejected; weight-3 rows are a fixpoint")


def _chain_transposed(nrows: int) -> np.ndarray:
    """H_nrows^T: nrows x (nrows-1), row j hits new columns j-1 and j (clipped)."""
    out = np.zeros((nrows, max(nrows - 1, 0)), dtype=np.uint8)
    for j in range(nrows):
        if j > 0:
            out[j, j - 1] = 1
        if j < nrows - 1:
            out[j, j] = 1
    return out


def _slot_layout(w: int, compressed: bool) -> list[list[int]]:
    """Support slots per block row: plain is one per row, compressed doubles the ends."""
    if not compressed:
        return [[i] for i in range(w)]
    slots = [[0, 1]]
    slots += [[i + 1] for i in range(1, w - 3)]
    slots.append([w - 2, w - 1])
    return slots


def reduce_rows(h: BinaryMatrix, opts: ReductionOptions, rng: np.random.Generator | None = None) -> BinaryMatrix:
    """Replace every row heavier than the threshold by its reduction block.

    New columns are appended on the right in row order; support positions
    fill the block in ascending column order, or randomly permuted when
    opts.permute is set (independently per row).
    """
    if rng is None:
        rng = np.random.default_rng(opts.seed)
    dense = h.to_dense()
    n = h.cols
    out_rows: list[tuple[np.ndarray, int, np.ndarray]] = []  # (old part, new offset, new part)
    new_total = 0
    for i in range(h.rows):
        supp = np.nonzero(dense[i])[0]
        w = len(supp)
        if w <= opts.row_threshold:
            out_rows.append((dense[i], 0, np.zeros((1, 0), dtype=np.uint8)))
            continue
        order = rng.permutation(w) if opts.permute else np.arange(w)
        blk_rows = w - 2 if opts.compressed else w
        chain = _chain_transposed(blk_rows)
        slots = _slot_layout(w, opts.compressed)
        old = np.zeros((blk_rows, n), dtype=np.uint8)
        for r, slot in enumerate(slots):
            for s in slot:
                old[r, supp[order[s]]] = 1
        out_rows.append((old, new_total, chain))
        new_total += chain.shape[1]
    total_rows = sum(part[0].shape[0] if part[0].ndim == 2 else 1 for part in out_rows)
    out = np.zeros((total_rows, n + new_total), dtype=np.uint8)
    r = 0
    for old, off, new in out_rows:
        if old.ndim == 1:
            out[r, :n] = old
            r += 1
            continue
        cnt = old.shape[0]
        out[r : r + cnt, :n] = old
        out[r : r + cnt, n + off : n + off + new.shape[1]] = new
        r += cnt
    return BinaryMatrix.from_dense(out.reshape(total_rows, -1))


def reduce_cols(h: BinaryMatrix, opts: ReductionOptions, rng: np.random.Generator | None = None) -> BinaryMatrix:
    """Column reduction: row-reduce the transpose and transpose back."""
    if rng is None:
        rng = np.random.default_rng(opts.seed)
    col_opts = ReductionOptions(
        compressed=opts.compressed,
        permute=opts.permute,
        seed=opts.seed,
        row_threshold=opts.col_threshold,
        col_threshold=opts.col_threshold,
    )
    return reduce_rows(h.transpose(), col_opts, rng).transpose()


def reduce_full(h: BinaryMatrix, opts: ReductionOptions) -> BinaryMatrix:
    """Rows first, then columns, single pass (Algorithm-1 order)."""
    rng = np.random.default_rng(opts.seed)
    return reduce_cols(reduce_rows(h, opts, rng), opts, rng)


def weight_violations(h: BinaryMatrix, opts: ReductionOptions) -> dict:
    """Residual rows/columns above threshold (single-pass reduction does not iterate)."""
    rows = [int(i) for i, w in enumerate(h.row_weights()) if w > opts.row_threshold]
    cols = [int(j) for j, w in enumerate(h.col_weights()) if w > opts.col_threshold]
    return {"rows": rows, "cols": cols}


# -- quasi-cyclic (base matrix) variant ---------------------------------


@dataclass
class BaseReduction:
    matrix: BaseMatrix
    diagnostics: list[str] = field(default_factory=list)


def _order_entries(entries, compressed, permute, rng, diags, label):
    """Order a row's entries, steering multi-term entries to the chain ends."""
    heavy = [e for e in entries if e[1].weight() > 1]
    light = [e for e in entries if e[1].weight() <= 1]
    if compressed and heavy:
        diags.append(f"{label}: multi-term entry cannot meet the threshold in compressed mode")
    for col, e in heavy:
        if e.weight() > 2:
            diags.append(f"{label}: entry at column {col} has weight {e.weight()}; irreducible entry")
    if len(heavy) > 2 and not compressed:
        diags.append(f"{label}: {len(heavy)} multi-term entries but only two chain ends; irreducible entry")
    if permute:
        rng.shuffle(heavy)
        rng.shuffle(light)
    if compressed or not heavy:
        items = heavy + light
        if permute:
            rng.shuffle(items)
            return items
        return sorted(items, key=lambda t: t[0])
    front, back = heavy[0], (heavy[1] if len(heavy) > 1 else None)
    middle = light + heavy[2:]
    if not permute:
        middle.sort(key=lambda t: t[0])
    return [front] + middle + ([back] if back is not None else [])


def reduce_base_rows(
    a: BaseMatrix, opts: ReductionOptions, rng: np.random.Generator | None = None
) -> BaseReduction:
    """Quasi-cyclic row reduction: split heavy rows entry-per-row with a constant-1 chain.

    A row is reduced when its total monomial weight exceeds the threshold
    and it has at least two nonzero entries.  Entries are never broken up;
    weight-2 entries are steered to the chain ends so the lifted row weight
    stays at three where possible, with an "irreducible entry" diagnostic
    otherwise.
    """
    if rng is None:
        rng = np.random.default_rng(opts.seed)
    ell = a.ell
    zero, one = RingElement.zero(ell), RingElement.one(ell)
    diags: list[str] = []
    kept: list[tuple[int, list[tuple[int, RingElement]]]] = []  # (output slot, entries)
    blocks = []  # (output slot, placed rows, chain, new-column offset)
    new_total = 0
    slot = 0
    for i in range(a.rows):
        entries = [(j, a.entries[i][j]) for j in range(a.cols) if not a.entries[i][j].is_zero()]
        total_weight = sum(e.weight() for _, e in entries)
        if total_weight <= opts.row_threshold or len(entries) < 2:
            if total_weight > opts.row_threshold:
                diags.append(f"row {i}: single entry of weight {total_weight}; irreducible entry")
            kept.append((slot, entries))
            slot += 1
            continue
        w = len(entries)
        # the compressed layout needs at least four support slots
        compressed_here = opts.compressed and w >= 4
        ordered = _order_entries(entries, compressed_here, opts.permute, rng, diags, f"row {i}")
        blk_rows = w - 2 if compressed_here else w
        chain = _chain_transposed(blk_rows)
        layout = _slot_layout(w, compressed_here)
        placed = [[ordered[s] for s in sl] for sl in layout]
        for r in range(blk_rows):
            rw = sum(e.weight() for _, e in placed[r]) + int(chain[r].sum())
            if rw > opts.row_threshold:
                diags.append(f"row {i}: split row has lifted weight {rw}; irreducible entry")
        blocks.append((slot, placed, chain, new_total))
        slot += blk_rows
        new_total += chain.shape[1]
    ncols = a.cols + new_total
    rows_out = [[zero] * ncols for _ in range(slot)]
    for at, entries in kept:
        for col, e in entries:
            rows_out[at][col] = e
    for at, placed, chain, off in blocks:
        for r, row_entries in enumerate(placed):
            for col, e in row_entries:
                rows_out[at + r][col] = e
            for t in range(chain.shape[1]):
                if chain[r, t]:
                    rows_out[at + r][a.cols + off + t] = one
    return BaseReduction(BaseMatrix(ell, rows_out), diags)


def reduce_base_full(a: BaseMatrix, opts: ReductionOptions) -> BaseReduction:
    """Base-matrix rows first, then columns via the ring transpose."""
    from .ringpoly import ring_transpose

    rng = np.random.default_rng(opts.seed)
    first = reduce_base_rows(a, opts, rng)
    col_opts = ReductionOptions(
        compressed=opts.compressed,
        permute=opts.permute,
        seed=opts.seed,
        row_threshold=opts.col_threshold,
        col_threshold=opts.col_threshold,
    )
    second = reduce_base_rows(ring_transpose(first.matrix), col_opts, rng)
    return BaseReduction(ring_transpose(second.matrix), first.diagnostics + second.diagnostics)
