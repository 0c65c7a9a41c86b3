"""Chain complexes over F2: homology dimensions, tensor products, mapping cones.

Direct-sum block ordering follows the convention "A-heavy summand first",
so tensor-product boundary matrices can be compared bit-exactly against
their displayed block forms.  Signs are omitted throughout (F2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BinaryMatrix, hstack, vstack


class ChainComplex:
    """Bounded chain complex; maps[i] is the boundary C_{i+1} -> C_i.

    space_dims[i] is dim C_i, with C_0 the rightmost space.  The composite
    of consecutive boundaries is checked to vanish at construction.
    """

    def __init__(self, maps: list[BinaryMatrix], dims: list[int] | None = None):
        self.maps = list(maps)
        if dims is None:
            if not maps:
                raise ValueError("a map-free complex needs explicit space dims")
            dims = [maps[0].rows] + [m.cols for m in maps]
        self.space_dims = list(dims)
        if len(self.space_dims) != len(self.maps) + 1:
            raise ValueError("space count must be one more than the map count")
        for i, m in enumerate(self.maps):
            if m.rows != self.space_dims[i] or m.cols != self.space_dims[i + 1]:
                raise ValueError(f"boundary {i + 1} has shape {m.rows}x{m.cols}, "
                                 f"expected {self.space_dims[i]}x{self.space_dims[i + 1]}")
        for i in range(len(self.maps) - 1):
            if not self.maps[i].mul(self.maps[i + 1]).is_zero():
                raise ValueError(f"boundary condition fails: d_{i + 1} o d_{i + 2} != 0")

    @property
    def top(self) -> int:
        return len(self.space_dims) - 1

    def boundary(self, i: int) -> BinaryMatrix | None:
        """The map C_i -> C_{i-1}, or None at the ends (treated as zero)."""
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        return None

    def dim(self, i: int) -> int:
        if 0 <= i <= self.top:
            return self.space_dims[i]
        return 0


def homology_dim(c: ChainComplex, i: int) -> int:
    """dim ker(d_i) - rank(d_{i+1}); missing end maps are zero maps."""
    if not (0 <= i <= c.top):
        return 0
    d_i = c.boundary(i)
    ker = c.dim(i) - (d_i.rank() if d_i is not None else 0)
    d_next = c.boundary(i + 1)
    return ker - (d_next.rank() if d_next is not None else 0)


def _blocks_at(a: ChainComplex, b: ChainComplex, t: int) -> list[tuple[int, int]]:
    # A-heavy first: descending A-level
    return [(i, t - i) for i in range(min(t, a.top), -1, -1) if 0 <= t - i <= b.top]


def tensor_product(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Total complex of the double complex, (A (x) B)_t = sum A_i (x) B_{t-i}."""
    top = a.top + b.top
    dims = []
    for t in range(top + 1):
        dims.append(sum(a.dim(i) * b.dim(j) for i, j in _blocks_at(a, b, t)))
    maps: list[BinaryMatrix] = []
    eye = BinaryMatrix.identity
    for t in range(1, top + 1):
        col_blocks = _blocks_at(a, b, t)
        row_blocks = _blocks_at(a, b, t - 1)
        col_mats = []
        for (i, j) in col_blocks:
            rows_for_col = []
            for (p, q) in row_blocks:
                if (p, q) == (i - 1, j):
                    blk = a.boundary(i).kron(eye(b.dim(j)))
                elif (p, q) == (i, j - 1):
                    blk = eye(a.dim(i)).kron(b.boundary(j))
                else:
                    blk = BinaryMatrix.zeros(a.dim(p) * b.dim(q), a.dim(i) * b.dim(j))
                rows_for_col.append(blk)
            col_mats.append(vstack(rows_for_col))
        maps.append(hstack(col_mats))
    return ChainComplex(maps, dims)


@dataclass
class ChainMap:
    """Level-wise maps f_i: A_i -> B_i with commuting squares."""

    source: ChainComplex
    target: ChainComplex
    components: list[BinaryMatrix]

    def __post_init__(self):
        a, b = self.source, self.target
        if len(self.components) != a.top + 1:
            raise ValueError("need one component per source level")
        for i, f in enumerate(self.components):
            if f.rows != b.dim(i) or f.cols != a.dim(i):
                raise ValueError(f"component {i} has shape {f.rows}x{f.cols}, "
                                 f"expected {b.dim(i)}x{a.dim(i)}")
        for i in range(1, a.top + 1):
            da = a.boundary(i)
            db = b.boundary(i)
            left = db.mul(self.components[i]) if db is not None else BinaryMatrix.zeros(b.dim(i - 1), a.dim(i))
            right = self.components[i - 1].mul(da)
            if left != right:
                raise ValueError(f"chain map squares do not commute at level {i}")

    def component(self, i: int) -> BinaryMatrix:
        if 0 <= i < len(self.components):
            return self.components[i]
        return BinaryMatrix.zeros(self.target.dim(i), self.source.dim(i))


def identity_chain_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, [BinaryMatrix.identity(d) for d in c.space_dims])


def zero_chain_map(a: ChainComplex, b: ChainComplex) -> ChainMap:
    return ChainMap(a, b, [BinaryMatrix.zeros(b.dim(i), a.dim(i)) for i in range(a.top + 1)])


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone with the source shifted up one level: cone_i = A_{i-1} + B_i.

    The boundary blocks are [[dA, 0], [f, dB]]; homology of the cone sees
    the source homology shifted by one.
    """
    a, b = f.source, f.target
    top = max(a.top + 1, b.top)
    dims = [a.dim(i - 1) + b.dim(i) for i in range(top + 1)]
    maps = []
    for i in range(1, top + 1):
        da = a.boundary(i - 1) or BinaryMatrix.zeros(a.dim(i - 2), a.dim(i - 1))
        db = b.boundary(i) or BinaryMatrix.zeros(b.dim(i - 1), b.dim(i))
        fi = f.component(i - 1)
        topblk = hstack([da, BinaryMatrix.zeros(a.dim(i - 2), b.dim(i))])
        botblk = hstack([fi, db])
        maps.append(vstack([topblk, botblk]))
    return ChainComplex(maps, dims)


def kunneth_check(a: ChainComplex, b: ChainComplex) -> list[dict]:
    """Compare homology of the tensor product against the Kunneth sum, per level."""
    prod = tensor_product(a, b)
    ha = [homology_dim(a, i) for i in range(a.top + 1)]
    hb = [homology_dim(b, j) for j in range(b.top + 1)]
    report = []
    for t in range(prod.top + 1):
        lhs = homology_dim(prod, t)
        rhs = sum(ha[i] * hb[t - i] for i in range(max(0, t - b.top), min(t, a.top) + 1))
        report.append({"level": t, "product": lhs, "kunneth": rhs, "ok": lhs == rhs})
    return report


def repetition_chain(ell: int) -> ChainComplex:
    """F2^{ell-1} --H_ell^T--> F2^ell (the distance-balancing factor)."""
    from .classical import repetition_check

    return ChainComplex([repetition_check(ell).transpose()], [ell, ell - 1])
