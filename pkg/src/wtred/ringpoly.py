"""Arithmetic in R_ell = F2[x]/(x^ell - 1) and circulant lifts of base matrices.

The lift convention places the coefficient vector in the first COLUMN of the
circulant (column j is the coefficients cyclically shifted down by j), which
makes the lift a ring homomorphism for left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import BinaryMatrix


@dataclass(frozen=True)
class RingElement:
    """Element of F2[x]/(x^ell - 1); coeffs[i] is the coefficient of x^i."""

    ell: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("lift size must be >= 1")
        if len(self.coeffs) != self.ell:
            raise ValueError("coefficient vector length must equal ell")

    @classmethod
    def zero(cls, ell: int) -> "RingElement":
        return cls(ell, (0,) * ell)

    @classmethod
    def one(cls, ell: int) -> "RingElement":
        return cls(ell, (1,) + (0,) * (ell - 1))

    @classmethod
    def monomial(cls, ell: int, power: int) -> "RingElement":
        c = [0] * ell
        c[power % ell] = 1
        return cls(ell, tuple(c))

    @classmethod
    def from_powers(cls, ell: int, powers) -> "RingElement":
        c = [0] * ell
        for p in powers:
            c[p % ell] ^= 1
        return cls(ell, tuple(c))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def weight(self) -> int:
        return sum(self.coeffs)

    def add(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.ell, tuple(a ^ b for a, b in zip(self.coeffs, other.coeffs)))

    def mul(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = [0] * self.ell
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % self.ell] ^= 1
        return RingElement(self.ell, tuple(out))

    def transpose(self) -> "RingElement":
        """g^T(x) = g_0 + g_{ell-1} x + ... + g_1 x^{ell-1}."""
        c = self.coeffs
        return RingElement(self.ell, (c[0],) + tuple(c[self.ell - i] for i in range(1, self.ell)))

    def _check(self, other: "RingElement") -> None:
        if self.ell != other.ell:
            raise ValueError("mismatched lift sizes")

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return "+".join(terms)


def parse_poly(token: str, ell: int) -> RingElement:
    """Parse a polynomial string such as "0", "1", "x", "1+x^3", "x^7+x^14"."""
    token = token.strip()
    if not token:
        raise ValueError("empty polynomial token")
    if token == "0":
        return RingElement.zero(ell)
    powers = []
    for term in token.split("+"):
        term = term.strip()
        if term == "1":
            powers.append(0)
        elif term == "x":
            powers.append(1)
        elif term.startswith("x^"):
            powers.append(int(term[2:]))
        else:
            raise ValueError(f"bad polynomial term {term!r}")
    return RingElement.from_powers(ell, powers)


class BaseMatrix:
    """Matrix with entries in R_ell; source of quasi-cyclic and lifted-product codes."""

    def __init__(self, ell: int, entries: list[list[RingElement]]):
        self.ell = ell
        self.entries = entries
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged base matrix")
            for e in row:
                if e.ell != ell:
                    raise ValueError("entry lift size differs from matrix lift size")

    @classmethod
    def from_strings(cls, ell: int, grid: list[list[str]]) -> "BaseMatrix":
        return cls(ell, [[parse_poly(t, ell) for t in row] for row in grid])

    @classmethod
    def zeros(cls, ell: int, rows: int, cols: int) -> "BaseMatrix":
        return cls(ell, [[RingElement.zero(ell) for _ in range(cols)] for _ in range(rows)])

    def get(self, i: int, j: int) -> RingElement:
        return self.entries[i][j]

    def entry_weights(self) -> np.ndarray:
        return np.array([[e.weight() for e in row] for row in self.entries], dtype=np.int64).reshape(
            self.rows, self.cols
        )

    def row_entry_counts(self) -> list[int]:
        return [sum(1 for e in row if not e.is_zero()) for row in self.entries]

    def mul(self, other: "BaseMatrix") -> "BaseMatrix":
        if self.ell != other.ell or self.cols != other.rows:
            raise ValueError("shape or lift mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RingElement.zero(self.ell)
                for t in range(self.cols):
                    acc = acc.add(self.entries[i][t].mul(other.entries[t][j]))
                row.append(acc)
            out.append(row)
        return BaseMatrix(self.ell, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BaseMatrix):
            return NotImplemented
        return self.ell == other.ell and self.entries == other.entries


def lift_element(g: RingElement) -> BinaryMatrix:
    """ell x ell circulant whose column j holds coeffs shifted down by j."""
    ell = g.ell
    dense = np.zeros((ell, ell), dtype=np.uint8)
    for i, c in enumerate(g.coeffs):
        if c:
            for j in range(ell):
                dense[(i + j) % ell, j] = 1
    return BinaryMatrix.from_dense(dense)


def lift_matrix(a: BaseMatrix) -> BinaryMatrix:
    """Replace every entry with its circulant lift."""
    ell = a.ell
    dense = np.zeros((a.rows * ell, a.cols * ell), dtype=np.uint8)
    for i in range(a.rows):
        for j in range(a.cols):
            e = a.entries[i][j]
            if not e.is_zero():
                dense[i * ell : (i + 1) * ell, j * ell : (j + 1) * ell] = lift_element(e).to_dense()
    return BinaryMatrix.from_dense(dense.reshape(a.rows * ell, -1)) if a.rows and a.cols else BinaryMatrix(
        a.rows * ell, a.cols * ell
    )


def ring_transpose(a: BaseMatrix) -> BaseMatrix:
    """Matrix transpose with every entry replaced by its ring transpose."""
    out = [[a.entries[i][j].transpose() for i in range(a.rows)] for j in range(a.cols)]
    return BaseMatrix(a.ell, out) if a.cols else BaseMatrix(a.ell, [])


# -- base-matrix text format -------------------------------------------


def write_base_text(a: BaseMatrix) -> str:
    """Header "rows cols ell", then entries row-major as polynomial strings."""
    lines = [f"{a.rows} {a.cols} {a.ell}"]
    for row in a.entries:
        lines.append(" ".join(str(e) for e in row))
    return "\n".join(lines) + "\n"


def read_base_text(text: str) -> BaseMatrix:
    toks = text.split()
    if len(toks) < 3:
        raise ValueError("base matrix text: missing 'rows cols ell' header")
    rows, cols, ell = int(toks[0]), int(toks[1]), int(toks[2])
    vals = toks[3:]
    if len(vals) != rows * cols:
        raise ValueError(f"base matrix text: expected {rows * cols} entries, got {len(vals)}")
    grid = [[vals[i * cols + j] for j in range(cols)] for i in range(rows)]
    return BaseMatrix.from_strings(ell, grid)
