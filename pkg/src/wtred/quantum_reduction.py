"""Quantum weight reduction: copying, gauging, thickening, choosing heights, coning.

The stages must run in this order; each preserves the number of logical
qubits and the CSS commutation constraint.  Copying reduces qubit X-degree,
gauging reduces X-stabilizer weight, thickening plus choosing heights
reduces qubit Z-degree, and coning (a mapping cone over the overlap graph
of each heavy Z stabilizer) reduces Z-stabilizer weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chain import repetition_chain, tensor_product
from .classical import repetition_check
from .css import CssCode
from .gf2 import BinaryMatrix, hstack, vstack


class UnreasonableCodeError(ValueError):
    """A Z logical operator lives inside the support of a targeted Z stabilizer."""

    def __init__(self, row: int, witness: BinaryMatrix):
        self.row = row
        self.witness = witness
        super().__init__(
            f"coning row {row}: kernel of the overlap graph contains a Z logical "
            f"operator of weight {int(witness.row_weights()[0])}; code is not reasonable"
        )


@dataclass(frozen=True)
class CopyVariant:
    kind: str = "original"  # original | reduced | targeted
    targ_q_x: int | None = None

    def __post_init__(self):
        if self.kind not in ("original", "reduced", "targeted"):
            raise ValueError(f"unknown copying variant {self.kind!r}")
        if (self.kind == "targeted") != (self.targ_q_x is not None):
            raise ValueError("targ_q_x must be given exactly for the targeted variant")
        if self.targ_q_x is not None and self.targ_q_x < 3:
            raise ValueError("target column weight must be >= 3")


@dataclass
class HeightsSpec:
    ell: int
    heights: list[int] | None = None  # 1-based, length n_Z; None selects greedy
    greedy_target_qz: int | None = None

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("thickening parameter must be >= 1")


@dataclass
class ConingOptions:
    cycle_basis_seed: int = 0
    cellulate_above: int = 4
    num_basis_trials: int = 1
    second_thickening: HeightsSpec | None = None
    scheme: str = "ladder"  # ladder | fan

    def __post_init__(self):
        if self.cellulate_above < 3:
            raise ValueError("cellulation face bound must be >= 3")
        if self.scheme not in ("ladder", "fan"):
            raise ValueError(f"unknown cellulation scheme {self.scheme!r}")


# -- copying ---------------------------------------------------------------


def _copy_counts(col_weights: np.ndarray, variant: CopyVariant) -> list[int]:
    q_x = int(col_weights.max()) if col_weights.size else 0
    counts = []
    for w in col_weights:
        w = int(w)
        if variant.kind == "original":
            counts.append(max(q_x, 1))
        elif variant.kind == "reduced":
            counts.append(max(w, 1))
        else:
            targ = variant.targ_q_x
            if w <= targ:
                counts.append(1)
            else:
                # ends accept targ-1 stabilizer edges, interior copies targ-2
                s = 2
                while 2 * (targ - 1) + (s - 2) * (targ - 2) < w:
                    s += 1
                counts.append(s)
    return counts


def copying(c: CssCode, variant: CopyVariant) -> CssCode:
    """Expand qubits into repetition chains of copies, filling left to right.

    Original copying makes q_X copies of every qubit, reduced copying one
    per incident X stabilizer, targeted copying just enough chain nodes for
    every copy to carry at most targ_q_x stabilizers (ends take one more
    than interior nodes).  Weight-two linking X stabilizers are appended
    after the copied stabilizers, grouped by qubit; Z stabilizers spread
    over all copies of each qubit in their support.
    """
    hx_d = c.hx.to_dense()
    hz_d = c.hz.to_dense()
    counts = _copy_counts(c.hx.col_weights(), variant)
    base = np.concatenate([[0], np.cumsum(counts)])
    new_n = int(base[-1])

    def capacity(i: int, j: int) -> int:
        s = counts[i]
        if s == 1:
            return 1 << 30  # unexpanded qubit keeps all its stabilizers
        if variant.kind == "targeted":
            return (variant.targ_q_x - 1) if j in (0, s - 1) else (variant.targ_q_x - 2)
        return 1

    slot = [[0] * s for s in counts]
    copied = np.zeros((c.hx.rows, new_n), dtype=np.uint8)
    for r in range(c.hx.rows):
        for i in np.nonzero(hx_d[r])[0]:
            i = int(i)
            j = next(j for j in range(counts[i]) if slot[i][j] < capacity(i, j))
            slot[i][j] += 1
            copied[r, base[i] + j] = 1
    links = []
    for i in range(c.n):
        for j in range(counts[i] - 1):
            row = np.zeros(new_n, dtype=np.uint8)
            row[base[i] + j] = row[base[i] + j + 1] = 1
            links.append(row)
    hx_new = np.concatenate([copied, np.array(links, dtype=np.uint8).reshape(len(links), new_n)])
    hz_new = np.zeros((c.hz.rows, new_n), dtype=np.uint8)
    for r in range(c.hz.rows):
        for i in np.nonzero(hz_d[r])[0]:
            i = int(i)
            hz_new[r, base[i] : base[i] + counts[i]] = 1
    return CssCode(BinaryMatrix.from_dense(hx_new), BinaryMatrix.from_dense(hz_new))


# -- gauging ---------------------------------------------------------------


def gauging(c: CssCode) -> CssCode:
    """Split every X stabilizer of weight > 3 into a chain of weight-3 pieces.

    Replacement rows follow the ascending support order; Z stabilizers are
    extended on the new columns by the prefix-parity rule (the m-th new
    column fixes anticommutation with the product of the first m new rows).
    """
    hx_d = c.hx.to_dense()
    hz_d = c.hz.to_dense()
    heavy = [r for r in range(c.hx.rows) if hx_d[r].sum() > 3]
    extra = int(sum(hx_d[r].sum() - 3 for r in heavy))
    new_n = c.n + extra
    x_rows = []
    z_new = np.concatenate([hz_d, np.zeros((c.hz.rows, extra), dtype=np.uint8)], axis=1)
    ptr = c.n
    for r in range(c.hx.rows):
        supp = [int(v) for v in np.nonzero(hx_d[r])[0]]
        w = len(supp)
        if w <= 3:
            row = np.zeros(new_n, dtype=np.uint8)
            row[supp] = 1
            x_rows.append(row)
            continue
        new_cols = list(range(ptr, ptr + w - 3))
        ptr += w - 3
        for j in range(w - 2):
            row = np.zeros(new_n, dtype=np.uint8)
            if j == 0:
                row[[supp[0], supp[1], new_cols[0]]] = 1
            elif j == w - 3:
                row[[supp[w - 2], supp[w - 1], new_cols[-1]]] = 1
            else:
                row[[supp[j + 1], new_cols[j - 1], new_cols[j]]] = 1
            x_rows.append(row)
        # prefix parities of the Z rows over the first m+2 support qubits
        cums = np.cumsum(hz_d[:, supp], axis=1) % 2
        for m in range(w - 3):
            z_new[:, new_cols[m]] = cums[:, m + 1]
    return CssCode(
        BinaryMatrix.from_dense(np.array(x_rows, dtype=np.uint8).reshape(len(x_rows), new_n)),
        BinaryMatrix.from_dense(z_new),
    )


# -- thickening and choosing heights ----------------------------------------


def thicken(c: CssCode, ell: int) -> tuple[CssCode, BinaryMatrix]:
    """Tensor with the repetition-code chain; returns the code and the metacheck map.

    The construction goes through the chain-complex tensor product and is
    asserted equal to its closed block form.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    prod = tensor_product(c.chain(), repetition_chain(ell))
    hx_t = prod.maps[0]
    hz_t = prod.maps[1].transpose()
    partial3 = prod.maps[2]
    eye = BinaryMatrix.identity
    h_ell = repetition_check(ell)
    n, n_x, n_z = c.n, c.hx.rows, c.hz.rows
    direct_hx = hstack([c.hx.kron(eye(ell)), eye(n_x).kron(h_ell.transpose())])
    direct_hz = vstack(
        [
            hstack([c.hz.kron(eye(ell)), BinaryMatrix.zeros(n_z * ell, n_x * (ell - 1))]),
            hstack([eye(n).kron(h_ell), c.hx.transpose().kron(eye(ell - 1))]),
        ]
    )
    direct_p3 = vstack([eye(n_z).kron(h_ell.transpose()), c.hz.transpose().kron(eye(ell - 1))])
    assert hx_t == direct_hx and hz_t == direct_hz and partial3 == direct_p3
    return CssCode(hx_t, hz_t), partial3


def _resolve_heights(hz_top: np.ndarray, n_z: int, ell: int, spec: HeightsSpec) -> list[int]:
    if spec.heights is not None:
        if len(spec.heights) != n_z:
            raise ValueError(f"heights vector has length {len(spec.heights)}, expected {n_z}")
        for h in spec.heights:
            if not 1 <= h <= ell:
                raise ValueError(f"height {h} outside 1..{ell}")
        return list(spec.heights)
    # greedy: assign each row the height currently minimizing the worst column
    # load over its support, tie-breaking on the lowest height index
    n = hz_top.shape[1] // ell
    load = np.zeros((n, ell), dtype=np.int64)
    heights = []
    for j in range(n_z):
        supp = np.nonzero(hz_top[j * ell])[0] // ell
        best_t, best_key = 1, None
        for t in range(ell):
            trial = load[supp, t] + 1
            key = (int(trial.max()), int(trial.sum()))
            if best_key is None or key < best_key:
                best_key, best_t = key, t + 1
        heights.append(best_t)
        load[supp, best_t - 1] += 1
    return heights


def choose_heights(thickened: CssCode, partial3: BinaryMatrix, spec: HeightsSpec) -> CssCode:
    """Keep one of each block of ell redundant thickened Z stabilizers.

    The dropped rows are recoverable through the metacheck dependencies, so
    the H_Z row space (hence the code) is unchanged; this is verified by a
    rank equality.
    """
    ell = spec.ell
    if ell == 1:
        return thickened
    n_z = partial3.cols // (ell - 1)
    hz_d = thickened.hz.to_dense()
    top = n_z * ell
    heights = _resolve_heights(hz_d[:top], n_z, ell, spec)
    keep = [j * ell + (heights[j] - 1) for j in range(n_z)]
    hz_new = BinaryMatrix.from_dense(np.concatenate([hz_d[keep], hz_d[top:]], axis=0))
    if hz_new.rank() != thickened.hz.rank():
        raise AssertionError("choosing heights changed the Z row space")
    return CssCode(thickened.hx, hz_new)


def height_multiplicity(spec: HeightsSpec, n_z: int) -> int:
    if spec.heights is None:
        raise ValueError("explicit heights required")
    return max(spec.heights.count(t) for t in set(spec.heights))


# -- coning ------------------------------------------------------------------


@dataclass
class ConeData:
    """All maps for one reduced Z stabilizer, after cellulation."""

    row: int
    support: list[int]
    edges: list[tuple[int, int, int | None]]  # (u, v, X row) with None for chords
    partial1: BinaryMatrix
    partial0: BinaryMatrix
    f1: BinaryMatrix
    f0: BinaryMatrix
    cycle_lengths: list[int] = field(default_factory=list)


def cellulate_cycle(length: int, scheme: str = "ladder", max_face: int = 4):
    """Chords and faces for one cycle; edges 0..length-1, chords numbered onward.

    Returns (chords, faces): chords as vertex-index pairs, faces as lists of
    edge ids.  The ladder scheme adds the minimal chord count for faces of
    at most max_face edges; the fan scheme triangulates from vertex 0.
    """
    if length <= max_face:
        return [], [list(range(length))]
    if scheme == "fan":
        chords = [(0, v) for v in range(2, length - 1)]
        faces = [[0, 1, length]]
        for i in range(1, length - 3):
            faces.append([i + 1, length + i - 1, length + i])
        faces.append([length - 2, length - 1, 2 * length - 4])
        return chords, faces
    # ladder: chords (v_i, v_{length-1-i}) until the inner face is small enough
    m = 0
    while length - 2 * m > max_face:
        m += 1
    chords = [(i, length - 1 - i) for i in range(1, m + 1)]
    faces = [[0, length, length - 2, length - 1]]
    for i in range(1, m):
        faces.append([i, length + i, length - 2 - i, length + i - 1])
    inner = list(range(m, length - 1 - m)) + [length + m - 1]
    faces.append(inner)
    return chords, faces


def _spanning_forest_cycles(n_vertices: int, edges: list[tuple[int, int]], rng=None):
    """Fundamental cycle basis from a BFS forest.

    Adjacency is visited in sorted (neighbor, edge) order, or shuffled when
    an rng is given.  Cycles come out in non-tree-edge order, each as a
    canonicalized (vertex sequence, edge sequence) pair.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_vertices)]
    for idx, (u, v) in enumerate(edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    for lst in adj:
        lst.sort()
        if rng is not None:
            rng.shuffle(lst)
    parent = [-1] * n_vertices  # edge index into edges, -1 at roots
    parent_vtx = [-1] * n_vertices
    seen = [False] * n_vertices
    tree = set()
    order = list(range(n_vertices))
    if rng is not None:
        order = list(rng.permutation(n_vertices))
    for root in order:
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v, idx in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = idx
                    parent_vtx[v] = u
                    tree.add(idx)
                    queue.append(v)
    cycles = []
    for idx, (u, v) in enumerate(edges):
        if idx in tree:
            continue
        pu = [u]
        while parent[pu[-1]] != -1:
            pu.append(parent_vtx[pu[-1]])
        pv_set = {v}
        x = v
        while parent[x] != -1:
            x = parent_vtx[x]
            pv_set.add(x)
        meet = next(x for x in pu if x in pv_set)
        verts, edge_seq = _walk_cycle(u, v, idx, parent, parent_vtx, meet)
        cycles.append((verts, edge_seq))
    return cycles


def _earclip_cycle(verts, edge_seq, next_edge_id: int, max_face: int, degree: list[int], rng):
    """Degree-aware cellulation: repeatedly cut off a quad at the least-loaded chord.

    Returns (chords as vertex pairs, faces as edge-id lists) using fresh ids
    from next_edge_id for the chords.  Mutates the shared degree tally.
    """
    ring = list(zip(verts, edge_seq))  # (vertex, edge to the next ring vertex)
    chords: list[tuple[int, int]] = []
    faces: list[list[int]] = []
    while len(ring) > max_face:
        L = len(ring)
        span = max_face - 1  # ring vertices consumed per cut
        order = rng.permutation(L)
        best = None
        for i0 in order:
            i0 = int(i0)
            a = ring[i0][0]
            b = ring[(i0 + span) % L][0]
            key = (max(degree[a], degree[b]) + 1, degree[a] + degree[b])
            if best is None or key < best[0]:
                best = (key, i0)
        i0 = best[1]
        a = ring[i0][0]
        b = ring[(i0 + span) % L][0]
        face = [ring[(i0 + t) % L][1] for t in range(span)] + [next_edge_id]
        chords.append((a, b))
        faces.append(face)
        degree[a] += 1
        degree[b] += 1
        keep = [(a, next_edge_id)] + [ring[(i0 + span + t) % L] for t in range(L - span)]
        ring = keep
        next_edge_id += 1
    faces.append([e for _, e in ring])
    return chords, faces


def _walk_cycle(u, v, closing_edge, parent, parent_vtx, meet):
    up_u, eu = [u], []
    while up_u[-1] != meet:
        eu.append(parent[up_u[-1]])
        up_u.append(parent_vtx[up_u[-1]])
    up_v, ev = [v], []
    while up_v[-1] != meet:
        ev.append(parent[up_v[-1]])
        up_v.append(parent_vtx[up_v[-1]])
    # cycle: u -> ... -> meet -> ... -> v -> (closing edge) -> u
    verts = up_u + up_v[-2::-1]
    edge_seq = eu + ev[::-1] + [closing_edge]
    return verts, edge_seq


def _canonical_cycle(verts: list[int], edge_seq: list[int]):
    """Rotate/reflect so the walk starts at the minimum vertex, smaller side first."""
    L = len(verts)
    start = verts.index(min(verts))
    fwd_v = verts[start:] + verts[:start]
    fwd_e = edge_seq[start:] + edge_seq[:start]
    # reversed walk: same start, opposite direction
    rev_v = [fwd_v[0]] + fwd_v[:0:-1]
    rev_e = fwd_e[::-1]
    if L == 2:
        return (fwd_v, fwd_e) if fwd_e[0] <= rev_e[0] else (rev_v, rev_e)
    if (fwd_v[1], fwd_e[0]) <= (rev_v[1], rev_e[0]):
        return fwd_v, fwd_e
    return rev_v, rev_e


@dataclass
class _ConeStatic:
    """Trial-independent part of one cone: overlap graph and the f maps."""

    row: int
    support: list[int]
    edges: list[tuple[int, int, int | None]]
    f1: BinaryMatrix
    f0: BinaryMatrix


def _cone_static(c: CssCode, row: int, hx_d: np.ndarray, hz_d: np.ndarray) -> _ConeStatic:
    support = [int(j) for j in np.nonzero(hz_d[row])[0]]
    edges: list[tuple[int, int, int | None]] = []
    for r in range(c.hx.rows):
        overlap = [int(j) for j in np.nonzero(hx_d[r][support])[0]]
        if not overlap:
            continue
        if len(overlap) % 2:
            raise AssertionError("odd X overlap on a commuting input")
        for a in range(0, len(overlap), 2):
            edges.append((overlap[a], overlap[a + 1], r))
    # reasonability: everything killed by the overlap graph must be a stabilizer
    pre_p1 = _incidence([(u, v) for u, v, _ in edges], len(support))
    ker = pre_p1.kernel_basis()
    if ker.rows:
        lifted = np.zeros((ker.rows, c.n), dtype=np.uint8)
        lifted[:, support] = ker.to_dense()
        if not c.hz.row_space_contains(BinaryMatrix.from_dense(lifted)):
            reduced = ker.to_dense()
            for i in range(ker.rows):
                w = np.zeros((1, c.n), dtype=np.uint8)
                w[0, support] = reduced[i]
                wm = BinaryMatrix.from_dense(w)
                if not c.hz.row_space_contains(wm):
                    raise UnreasonableCodeError(row, wm)
    f1 = np.zeros((c.n, len(support)), dtype=np.uint8)
    for i, q in enumerate(support):
        f1[q, i] = 1
    f0 = np.zeros((c.hx.rows, len(edges)), dtype=np.uint8)
    for i, (_, _, r) in enumerate(edges):
        if r is not None:
            f0[r, i] = 1
    return _ConeStatic(
        row=row,
        support=support,
        edges=edges,
        f1=BinaryMatrix.from_dense(f1),
        f0=BinaryMatrix.from_dense(f0) if edges else BinaryMatrix(c.hx.rows, 0),
    )


def _cone_trial(static: _ConeStatic, n_x: int, opts: ConingOptions, rng=None) -> ConeData:
    support, edges = static.support, static.edges
    cycles = _spanning_forest_cycles(len(support), [(u, v) for u, v, _ in edges], rng)
    all_edges = list(edges)
    faces_all: list[list[int]] = []
    cycle_lengths = []
    if rng is None:
        # deterministic pass: canonical traversal, fixed cellulation pattern
        for verts, edge_seq in cycles:
            verts, edge_seq = _canonical_cycle(verts, edge_seq)
            cycle_lengths.append(len(edge_seq))
            chords, faces = cellulate_cycle(len(edge_seq), opts.scheme, opts.cellulate_above)
            chord_base = len(all_edges)
            for (a, b) in chords:
                all_edges.append((verts[a], verts[b], None))
            local = {i: e for i, e in enumerate(edge_seq)}
            for i in range(len(chords)):
                local[len(edge_seq) + i] = chord_base + i
            faces_all.extend([[local[e] for e in face] for face in faces])
    else:
        # randomized pass: balance chord endpoints against the running degree
        degree = [0] * len(support)
        for u, v, _ in edges:
            degree[u] += 1
            degree[v] += 1
        order = [int(i) for i in rng.permutation(len(cycles))] if cycles else []
        for ci in order:
            verts, edge_seq = cycles[ci]
            cycle_lengths.append(len(edge_seq))
            chords, faces = _earclip_cycle(
                verts, edge_seq, len(all_edges), opts.cellulate_above, degree, rng
            )
            for (a, b) in chords:
                all_edges.append((a, b, None))
            faces_all.extend(faces)
    p0 = np.zeros((max(len(faces_all), 0), len(all_edges)), dtype=np.uint8)
    for i, face in enumerate(faces_all):
        p0[i, face] = 1
    partial0 = (
        BinaryMatrix.from_dense(p0) if faces_all else BinaryMatrix(0, len(all_edges))
    )
    n_chords = len(all_edges) - len(edges)
    f0 = (
        hstack([static.f0, BinaryMatrix.zeros(n_x, n_chords)])
        if n_chords
        else static.f0
    )
    return ConeData(
        row=static.row,
        support=support,
        edges=all_edges,
        partial1=_incidence([(u, v) for u, v, _ in all_edges], len(support)),
        partial0=partial0,
        f1=static.f1,
        f0=f0,
        cycle_lengths=cycle_lengths,
    )


def cone_data(c: CssCode, row: int, opts: ConingOptions, rng=None) -> ConeData:
    """Build the coning maps for one Z stabilizer row."""
    static = _cone_static(c, row, c.hx.to_dense(), c.hz.to_dense())
    return _cone_trial(static, c.hx.rows, opts, rng)


def _incidence(edges: list[tuple[int, int]], n_vertices: int) -> BinaryMatrix:
    d = np.zeros((len(edges), n_vertices), dtype=np.uint8)
    for i, (u, v) in enumerate(edges):
        d[i, u] = 1
        d[i, v] = 1
    return BinaryMatrix.from_dense(d.reshape(len(edges), -1)) if edges else BinaryMatrix(0, n_vertices)


def _assemble_cone(c: CssCode, reduce_set: list[int], cones: list[ConeData]):
    """Stabilizer matrices of the multi-row mapping cone (new sectors first)."""
    new_cols = [len(cd.edges) for cd in cones]
    total_new = sum(new_cols)
    n_new = total_new + c.n
    hx_rows = []
    off = 0
    for cd in cones:
        blk = np.zeros((cd.partial0.rows, n_new), dtype=np.uint8)
        blk[:, off : off + cd.partial0.cols] = cd.partial0.to_dense()
        hx_rows.append(blk)
        off += cd.partial0.cols
    bottom = np.zeros((c.hx.rows, n_new), dtype=np.uint8)
    off = 0
    for cd in cones:
        bottom[:, off : off + cd.f0.cols] = cd.f0.to_dense()
        off += cd.f0.cols
    bottom[:, total_new:] = c.hx.to_dense()
    hx_rows.append(bottom)
    hx_new = np.concatenate(hx_rows, axis=0)

    hz_rows = []
    off = 0
    for cd in cones:
        blk = np.zeros((cd.partial1.cols, n_new), dtype=np.uint8)
        blk[:, off : off + cd.partial1.rows] = cd.partial1.to_dense().T
        blk[:, total_new:] = cd.f1.to_dense().T
        hz_rows.append(blk)
        off += cd.partial1.rows
    keep = [r for r in range(c.hz.rows) if r not in set(reduce_set)]
    direct = np.zeros((len(keep), n_new), dtype=np.uint8)
    direct[:, total_new:] = c.hz.to_dense()[keep]
    hz_rows.append(direct)
    hz_new = np.concatenate(hz_rows, axis=0)
    return hx_new, hz_new


def coning(c: CssCode, reduce_set: list[int], opts: ConingOptions) -> CssCode:
    """Reduce the listed Z stabilizers through mapping cones over their overlap graphs.

    Trial 0 uses the deterministic sorted-adjacency spanning forest; later
    trials reshuffle it from the seed.  The output minimizing the tuple
    (w_Z, q_X, w_X, n) is kept.
    """
    reduce_set = sorted(reduce_set)
    hx_d = c.hx.to_dense()
    hz_d = c.hz.to_dense()
    statics = [_cone_static(c, r, hx_d, hz_d) for r in reduce_set]
    best = None
    for trial in range(max(1, opts.num_basis_trials)):
        rng = None if trial == 0 else np.random.default_rng((opts.cycle_basis_seed, trial))
        cones = [_cone_trial(s, c.hx.rows, opts, rng) for s in statics]
        hx_new, hz_new = _assemble_cone(c, reduce_set, cones)
        w_z = int(hz_new.sum(axis=1).max()) if hz_new.size else 0
        q_x = int(hx_new.sum(axis=0).max()) if hx_new.size else 0
        w_x = int(hx_new.sum(axis=1).max()) if hx_new.size else 0
        key = (w_z, q_x, w_x, hx_new.shape[1])
        if best is None or key < best[0]:
            best = (key, hx_new, hz_new)
    _, hx_new, hz_new = best
    out = CssCode(
        BinaryMatrix.from_dense(hx_new.reshape(hx_new.shape[0], -1)),
        BinaryMatrix.from_dense(hz_new.reshape(hz_new.shape[0], -1)),
    )
    if out.k != c.k:
        raise AssertionError(f"coning changed k: {c.k} -> {out.k}")
    return out


def second_thickening(c: CssCode, spec: HeightsSpec) -> CssCode:
    """Extra thickening round with the X and Z roles switched (reduces q_X)."""
    swapped = CssCode(c.hz, c.hx)
    thick, p3 = thicken(swapped, spec.ell)
    chosen = choose_heights(thick, p3, spec)
    return CssCode(chosen.hz, chosen.hx)


# -- full pipeline -----------------------------------------------------------


@dataclass
class PipelineResult:
    code: CssCode
    stages: list[dict]
    heights: list[int]
    coned_rows: list[int]

    def stage(self, name: str) -> dict:
        return next(s for s in self.stages if s["name"] == name)


def full_pipeline(
    c: CssCode,
    variant: CopyVariant,
    spec: HeightsSpec,
    cone_opts: ConingOptions,
) -> PipelineResult:
    """copying -> gauging -> thickening + choosing heights -> coning.

    Z rows heavier than five after choosing heights (the surviving
    thickened rows) are coned; the bottom-block rows stay direct.
    """
    stages = []

    def record(name: str, code: CssCode):
        stages.append({"name": name, "n": code.n, "k": code.k, "weights": code.weights})

    record("input", c)
    c1 = copying(c, variant)
    record("copying", c1)
    c2 = gauging(c1)
    record("gauging", c2)
    thick, p3 = thicken(c2, spec.ell)
    record("thickening", thick)
    if spec.heights is None and spec.ell > 1:
        hz_d = thick.hz.to_dense()
        n_z = p3.cols // (spec.ell - 1)
        resolved = _resolve_heights(hz_d[: n_z * spec.ell], n_z, spec.ell, spec)
        spec = HeightsSpec(spec.ell, resolved, spec.greedy_target_qz)
    c3 = choose_heights(thick, p3, spec)
    record("choosing-heights", c3)
    if spec.greedy_target_qz is not None:
        stages[-1]["q_z_target"] = spec.greedy_target_qz
        stages[-1]["q_z_target_met"] = c3.q_z <= spec.greedy_target_qz
    weights = c3.hz.row_weights()
    reduce_set = [int(r) for r in np.nonzero(weights > 5)[0]]
    c4 = coning(c3, reduce_set, cone_opts)
    record("coning", c4)
    if cone_opts.second_thickening is not None:
        c4 = second_thickening(c4, cone_opts.second_thickening)
        record("second-thickening", c4)
    for s in stages:
        if s["k"] != c.k:
            raise AssertionError(f"stage {s['name']} changed k: {c.k} -> {s['k']}")
    heights = spec.heights if spec.heights is not None else [1] * c2.hz.rows
    return PipelineResult(code=c4, stages=stages, heights=heights, coned_rows=reduce_set)
