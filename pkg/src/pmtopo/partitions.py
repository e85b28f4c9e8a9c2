"""Boxed plane partitions and their bijection with perfect matchings.

A plane partition in a k x m x n box is a k x m integer matrix with
entries in [0, n] that weakly decreases along rows and down columns; it is
the height field of a stack of unit cubes pushed into the corner of the
box.  The boundary surface of such a stack, viewed down the (1,1,1) axis,
tiles the (k, m, n) hexagon with three kinds of lozenges, and lozenge
tilings are exactly the perfect matchings of the honeycomb graph.  The
surface consists of

* one cube-top square per box column (i, j), at height h[i][j], which
  projects to the "diag" edge at (i-1-h, j-1-h);
* row walls between consecutive rows i and i+1 (with a full back wall of
  height n behind row 1 and a drop to 0 after row k), contributing the
  "horiz" edges at (i-t, j-t) for each wall square at height t; and
* column walls, symmetrically, contributing "vert" edges at (i-t, j-t).

For k = 1 the same matching is described by closed-form membership rules
on the structured labels, with the conventions h_0 = n and h_{m+1} = 0:

    a_{i,j} in M  iff  j = h_i
    b_{i,j} in M  iff  h_i >= j > h_{i+1}
    d_{i,j} in M  iff  j > h_i or j < h_{i+1}

Both constructions are implemented and must agree edge for edge; the
brute-force matching enumerator provides a third, bijection-free route.
All functions here are pure and operate on immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import SizeCapError
from .hexgraph import HexGraph, structured_label_pos

PARTITION_CAP = 10_000_000
MATCHING_CAP = 1_000_000


@dataclass(frozen=True)
class PlanePartition:
    """A k x m matrix of heights in [0, n], weakly decreasing both ways."""

    k: int
    m: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.k or any(len(r) != self.m for r in self.rows):
            raise ValueError(f"expected a {self.k} x {self.m} matrix")
        for r in self.rows:
            if any(not 0 <= v <= self.n for v in r):
                raise ValueError(f"entries must lie in [0, {self.n}]")
            if any(r[j] < r[j + 1] for j in range(self.m - 1)):
                raise ValueError("rows must weakly decrease left to right")
        for i in range(self.k - 1):
            if any(self.rows[i][j] < self.rows[i + 1][j] for j in range(self.m)):
                raise ValueError("columns must weakly decrease top to bottom")

    @property
    def heights(self) -> tuple[int, ...]:
        """The single row of heights (k = 1 only)."""
        if self.k != 1:
            raise ValueError("heights is defined for k = 1 partitions")
        return self.rows[0]

    def row_major(self) -> tuple[int, ...]:
        return tuple(v for r in self.rows for v in r)

    @classmethod
    def from_heights(cls, heights, n: int) -> "PlanePartition":
        heights = tuple(heights)
        return cls(1, len(heights), n, (heights,))

    @classmethod
    def constant(cls, k: int, m: int, n: int, value: int) -> "PlanePartition":
        return cls(k, m, n, tuple((value,) * m for _ in range(k)))


@dataclass(frozen=True)
class Matching:
    """A perfect matching, stored as a bitset over edge indices."""

    graph: object
    bits: int

    def edge_indices(self) -> tuple[int, ...]:
        out, x = [], self.bits
        while x:
            low = x & -x
            out.append(low.bit_length() - 1)
            x ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, edge_index: int) -> bool:
        return bool(self.bits >> edge_index & 1)


def count_plane_partitions(k: int, m: int, n: int) -> int:
    """Number of plane partitions in a k x m x n box (exact box product)."""
    total = Fraction(1)
    for i in range(1, k + 1):
        for j in range(1, m + 1):
            total *= Fraction(n + i + j - 1, i + j - 1)
    assert total.denominator == 1
    return int(total)


def enumerate_plane_partitions(k: int, m: int, n: int,
                               *, cap: int = PARTITION_CAP) -> list[PlanePartition]:
    """All plane partitions in the box, sorted by row-major entries.

    Raises :class:`SizeCapError` when the count (known in closed form)
    would exceed ``cap``.
    """
    total = count_plane_partitions(k, m, n)
    if total > cap:
        raise SizeCapError(
            f"too many plane partitions: {total} exceeds the cap of {cap}")

    def rows_from(i: int, above: tuple[int, ...] | None):
        if i == k:
            yield ()
            return
        for row in row_from(0, above, n):
            for rest in rows_from(i + 1, row):
                yield (row,) + rest

    def row_from(j: int, above, left: int):
        if j == m:
            yield ()
            return
        hi = min(left, above[j] if above is not None else n)
        for v in range(hi + 1):
            for rest in row_from(j + 1, above, v):
                yield (v,) + rest

    out = [PlanePartition(k, m, n, rows) for rows in rows_from(0, None)]
    out.sort(key=lambda p: p.row_major())
    assert len(out) == total
    return out


def _require_dims(g: HexGraph, p: PlanePartition) -> None:
    if (g.k, g.m, g.n) != (p.k, p.m, p.n):
        raise ValueError(
            f"dimension mismatch: graph is {g.k}x{g.m}x{g.n}, "
            f"partition is {p.k}x{p.m}x{p.n}")


def pp_to_matching(g: HexGraph, p: PlanePartition) -> Matching:
    """Perfect matching of the cube-stack surface of ``p`` (any k)."""
    _require_dims(g, p)
    k, m, n = p.k, p.m, p.n
    rows = p.rows
    pos = []
    for i in range(1, k + 1):
        for j in range(1, m + 1):
            h = rows[i - 1][j - 1]
            pos.append(("diag", i - 1 - h, j - 1 - h))
    for i in range(0, k + 1):  # row walls, including the back wall at height n
        for j in range(1, m + 1):
            hi = n if i == 0 else rows[i - 1][j - 1]
            lo = 0 if i == k else rows[i][j - 1]
            for t in range(lo + 1, hi + 1):
                pos.append(("horiz", i - t, j - t))
    for j in range(0, m + 1):  # column walls
        for i in range(1, k + 1):
            hi = n if j == 0 else rows[i - 1][j - 1]
            lo = 0 if j == m else rows[i - 1][j]
            for t in range(lo + 1, hi + 1):
                pos.append(("vert", i - t, j - t))
    bits = 0
    for q in pos:
        bits |= 1 << g.pos_index[q]
    assert bits.bit_count() == g.n_vertices // 2
    return Matching(g, bits)


def pp_to_matching_k1(g: HexGraph, p: PlanePartition) -> Matching:
    """Perfect matching of a 1 x m x n partition by the closed-form rules."""
    if g.k != 1:
        raise ValueError("closed-form rules apply to k = 1 graphs only")
    _require_dims(g, p)
    m, n = g.m, g.n
    h = (n,) + p.heights + (0,)  # h[0] = n, h[m+1] = 0
    bits = 0
    for i in range(1, m + 1):
        bits |= 1 << g.pos_index[structured_label_pos("a", i, h[i])]
    for i in range(0, m + 1):
        for j in range(1, n + 1):
            if h[i] >= j > h[i + 1]:
                bits |= 1 << g.pos_index[structured_label_pos("b", i, j)]
    for i in range(0, m + 1):
        for j in range(0, n + 1):
            if (i, j) in ((0, n), (m, 0)):
                continue
            if j > h[i] or j < h[i + 1]:
                bits |= 1 << g.pos_index[structured_label_pos("d", i, j)]
    return Matching(g, bits)


def is_perfect_matching(graph, bits: int) -> bool:
    """True when the edge set covers every vertex exactly once."""
    covered = 0
    x = bits
    while x:
        low = x & -x
        x ^= low
        u, v = graph.edges[low.bit_length() - 1]
        if covered >> u & 1 or covered >> v & 1:
            return False
        covered |= 1 << u | 1 << v
    return covered == (1 << graph.n_vertices) - 1


def matching_to_pp(g: HexGraph, matching: Matching | int) -> PlanePartition:
    """Invert the bijection: recover the height field from a matching.

    The "diag" edges of a matching are the cube tops, one per box column
    (i, j).  Along a fixed diagonal i - j of the box the top positions are
    strictly increasing, so sorting the matched diag edges within each
    diagonal assigns them to columns uniquely.
    """
    bits = matching.bits if isinstance(matching, Matching) else matching
    if not is_perfect_matching(g, bits):
        raise ValueError("edge set is not a perfect matching of the graph")
    k, m, n = g.k, g.m, g.n
    by_diagonal: dict[int, list[int]] = {}
    x = bits
    while x:
        low = x & -x
        x ^= low
        kind, a, b = g.edge_pos[low.bit_length() - 1]
        if kind == "diag":
            by_diagonal.setdefault(a - b, []).append(a)
    heights = [[0] * m for _ in range(k)]
    for d, tops in by_diagonal.items():
        tops.sort()
        columns = [(i, j) for i in range(1, k + 1) for j in range(1, m + 1)
                   if i - j == d]
        columns.sort()
        if len(tops) != len(columns):
            raise ValueError("matching is not a cube-stack surface")
        for (i, j), a in zip(columns, tops):
            h = i - 1 - a
            if not 0 <= h <= n:
                raise ValueError("matching is not a cube-stack surface")
            heights[i - 1][j - 1] = h
    return PlanePartition(k, m, n, tuple(tuple(r) for r in heights))


def enumerate_perfect_matchings(graph, *, cap: int = MATCHING_CAP) -> list[Matching]:
    """All perfect matchings, by backtracking on the lowest uncovered vertex.

    Works for any graph exposing ``n_vertices``, ``edges`` and
    ``adjacency``; returns an empty list when the vertex count is odd.
    Raises :class:`SizeCapError` beyond ``cap`` matchings.
    """
    nv = graph.n_vertices
    out: list[Matching] = []
    if nv % 2:
        return out
    adjacency = graph.adjacency
    full = (1 << nv) - 1

    def extend(covered: int, chosen: int) -> None:
        if covered == full:
            if len(out) >= cap:
                raise SizeCapError(
                    f"too many perfect matchings: cap of {cap} exceeded")
            out.append(Matching(graph, chosen))
            return
        v = (~covered & (covered + 1)).bit_length() - 1  # lowest uncovered
        for ei, w in adjacency[v]:
            if not covered >> w & 1:
                extend(covered | 1 << v | 1 << w, chosen | 1 << ei)

    extend(0, 0)
    out.sort(key=lambda mt: mt.bits)
    return out
