"""Tanner graphs: girth, 4-cycle census, copying cycle counts, DOT export.

Graphs are bipartite multigraphs; check nodes carry an X/Z type (or none
for classical codes).  4-cycles are counted per check pair as the number
of ways to pick two edge-disjoint length-2 paths through distinct
variables, which reduces to C(common-neighbors, 2) for simple graphs.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from .css import CssCode
from .gf2 import BinaryMatrix

FourCycleCounts = namedtuple("FourCycleCounts", ["x_only", "z_only", "cross", "untyped"])


@dataclass
class TannerGraph:
    n_checks: int
    n_vars: int
    check_types: list[str | None]
    edges: list[tuple[int, int]]  # (check, var), multiset
    var_labels: list[str] = field(default_factory=list)

    def multiplicity_matrix(self) -> np.ndarray:
        m = np.zeros((self.n_checks, self.n_vars), dtype=np.int64)
        for c, v in self.edges:
            m[c, v] += 1
        return m

    def check_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_checks, dtype=np.int64)
        for c, _ in self.edges:
            deg[c] += 1
        return deg

    def var_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vars, dtype=np.int64)
        for _, v in self.edges:
            deg[v] += 1
        return deg


def from_classical(h: BinaryMatrix) -> TannerGraph:
    dense = h.to_dense()
    edges = [(int(r), int(c)) for r, c in zip(*np.nonzero(dense))]
    return TannerGraph(h.rows, h.cols, [None] * h.rows, edges)


def from_css(c: CssCode) -> TannerGraph:
    """Checks are the X rows followed by the Z rows."""
    hx = c.hx.to_dense()
    hz = c.hz.to_dense()
    edges = [(int(r), int(v)) for r, v in zip(*np.nonzero(hx))]
    edges += [(int(r) + c.hx.rows, int(v)) for r, v in zip(*np.nonzero(hz))]
    types = ["X"] * c.hx.rows + ["Z"] * c.hz.rows
    return TannerGraph(c.hx.rows + c.hz.rows, c.n, types, edges)


def _pair_cycles(ma: np.ndarray, mb: np.ndarray, same: bool) -> int:
    """Sum over check pairs of the number of 4-cycles between the two groups."""
    if ma.shape[0] == 0 or mb.shape[0] == 0:
        return 0
    s = ma @ mb.T
    s2 = (ma * ma) @ (mb * mb).T
    per_pair = (s.astype(np.int64) ** 2 - s2) // 2
    if same:
        return int((per_pair.sum() - np.trace(per_pair)) // 2)
    return int(per_pair.sum())


def count_4cycles(g: TannerGraph) -> FourCycleCounts:
    """Unordered 4-cycles (two checks, two distinct variables) by check-type pair."""
    m = g.multiplicity_matrix()
    groups = {}
    for t in ("X", "Z", None):
        idx = [i for i, ct in enumerate(g.check_types) if ct == t]
        groups[t] = m[idx] if idx else np.zeros((0, g.n_vars), dtype=np.int64)
    return FourCycleCounts(
        x_only=_pair_cycles(groups["X"], groups["X"], same=True),
        z_only=_pair_cycles(groups["Z"], groups["Z"], same=True),
        cross=_pair_cycles(groups["X"], groups["Z"], same=False),
        untyped=_pair_cycles(groups[None], groups[None], same=True),
    )


def count_4cycles_brute(g: TannerGraph) -> FourCycleCounts:
    """Definitional oracle: enumerate check pairs and variable pairs directly."""
    m = g.multiplicity_matrix()
    tallies = {"x_only": 0, "z_only": 0, "cross": 0, "untyped": 0}
    for c1 in range(g.n_checks):
        for c2 in range(c1 + 1, g.n_checks):
            paths = m[c1] * m[c2]
            count = 0
            nz = np.nonzero(paths)[0]
            for a in range(len(nz)):
                for b in range(a + 1, len(nz)):
                    count += int(paths[nz[a]] * paths[nz[b]])
            t1, t2 = g.check_types[c1], g.check_types[c2]
            if t1 is None and t2 is None:
                tallies["untyped"] += count
            elif t1 == t2 == "X":
                tallies["x_only"] += count
            elif t1 == t2 == "Z":
                tallies["z_only"] += count
            elif t1 is not None and t2 is not None:
                tallies["cross"] += count
    return FourCycleCounts(**tallies)


def copying_new_4cycles(c: CssCode, copy_counts: list[int]) -> tuple[int, int]:
    """New (Z-only, X-Z) 4-cycles created by splitting qubits into copies.

    A variable split into s copies with c incident Z checks contributes
    C(s,2) C(c,2) Z-only cycles (through two copies of the same qubit) and
    c (s-1) X-Z cycles (through a linking stabilizer), summed over qubits.
    """
    cz = c.hz.col_weights()
    z_only = 0
    cross = 0
    for s, cc in zip(copy_counts, cz):
        z_only += math.comb(s, 2) * math.comb(int(cc), 2)
        cross += int(cc) * (s - 1)
    return z_only, cross


def girth(g: TannerGraph, only_type: str | None = None) -> int | float:
    """Shortest cycle length via BFS from every node; inf for forests.

    With only_type set, the census is restricted to checks of that type
    (plus all variables).
    """
    if only_type is None:
        checks = list(range(g.n_checks))
    else:
        checks = [i for i, t in enumerate(g.check_types) if t == only_type]
    remap = {c: i for i, c in enumerate(checks)}
    nc = len(checks)
    nodes = nc + g.n_vars
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nodes)]
    eid = 0
    for c, v in g.edges:
        if c not in remap:
            continue
        a, b = remap[c], nc + v
        adj[a].append((b, eid))
        adj[b].append((a, eid))
        eid += 1
    best = math.inf
    for start in range(nodes):
        dist = {start: 0}
        via = {start: -1}
        queue = [start]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            if dist[u] * 2 >= best:
                continue
            for v, e in adj[u]:
                if e == via[u]:
                    continue
                if v not in dist:
                    dist[v] = dist[u] + 1
                    via[v] = e
                    queue.append(v)
                else:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def to_dot(g: TannerGraph, name: str = "tanner") -> str:
    """DOT export: open squares for X checks, filled squares for Z, circles for variables."""
    lines = [f"graph {name} {{"]
    for i, t in enumerate(g.check_types):
        style = ', style=filled, fillcolor=black, fontcolor=white' if t == "Z" else ""
        label = f"{t or 'c'}{i}"
        lines.append(f'  c{i} [shape=square{style}, label="{label}"];')
    for v in range(g.n_vars):
        label = g.var_labels[v] if v < len(g.var_labels) else f"v{v}"
        lines.append(f'  v{v} [shape=circle, label="{label}"];')
    for c, v in g.edges:
        lines.append(f"  c{c} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
