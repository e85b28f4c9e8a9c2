"""Honeycomb graphs on a triangular lattice.

The honeycomb graph ``H(k, m, n)`` is the plane dual of the triangulated
hexagon with side lengths k, m, n, k, m, n: its vertices are the unit
triangles of the hexagon and two triangles are adjacent exactly when they
share a lattice edge.  Perfect matchings of this graph are the lozenge
tilings of the hexagon, which encode plane partitions in a k x m x n box
(see :mod:`pmtopo.partitions`).

Lattice conventions
-------------------
Points live in skewed integer coordinates in which the triangular lattice
is Z^2 with edge directions (1,0), (0,1) and (1,1).  The hexagon for
(k, m, n) is the convex region

    -n <= X <= k,    -n <= Y <= m,    -k <= Y - X <= m.

Every unit cell [a, a+1] x [b, b+1] is cut along its main diagonal into a
*lower* triangle ``(0, a, b)`` with corners (a,b), (a+1,b), (a+1,b+1) and
an *upper* triangle ``(1, a, b)`` with corners (a,b), (a,b+1), (a+1,b+1).
Lower and upper triangles are the two bipartition classes.  An edge of the
honeycomb crosses exactly one lattice edge and is identified by a kind and
a base point:

    ("diag",  a, b)   lower(a,b) -- upper(a,b)     crossing (a,b)-(a+1,b+1)
    ("horiz", a, b)   lower(a,b) -- upper(a,b-1)   crossing (a,b)-(a+1,b)
    ("vert",  a, b)   upper(a,b) -- lower(a-1,b)   crossing (a,b)-(a,b+1)

In the cube-stack reading of a tiling, "diag" lozenges are cube tops,
"horiz" lozenges are faces of walls that run along rows, and "vert"
lozenges are faces of walls that run along columns.

Edge labels
-----------
For k = 1 every edge carries a structured label with the hexagonal faces
arranged in m columns and n rows:

    a_{i,j} = diag(-j, i-1-j)    1 <= i <= m,  0 <= j <= n
    b_{i,j} = vert(1-j, i-j)     0 <= i <= m,  1 <= j <= n
    d_{i,j} = horiz(-j, i-j)     0 <= i <= m,  0 <= j <= n,
                                 except d_{0,n} and d_{m,0}

together with the reserved names x = d_{0,0}, y = d_{m,n} and
z = d_{m-1,1}.  The two excluded d labels would name triangles outside the
hexagon; their absence is geometric, not conventional.

For (k, m, n) = (2, 2, 2) a static alias table names the eighteen edges
used by the Morse pairing sequences (``alpha``..``delta`` and a/b/c names
keyed to the seven hexagonal faces).  The table is checked on every
construction against membership signatures of the twenty perfect
matchings, so a transcription error cannot survive silently.

Graphs are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import LabelError, SizeCapError

Triangle = tuple[int, int, int]  # (orientation, a, b); 0 = lower, 1 = upper
EdgePos = tuple[str, int, int]   # (kind, a, b) with kind in {"diag", "horiz", "vert"}

EDGE_CAP = 10_000

RESERVED_NAMES = ("x", "y", "z", "alpha", "beta", "gamma", "delta")

#: Named edges of H(2,2,2), keyed to lattice positions.  alpha..delta are the
#: four "diag" edges on the central column of hexagons, top to bottom.
ALIASES_2X2X2: dict[str, EdgePos] = {
    "alpha": ("diag", -2, -2),
    "beta": ("diag", -1, -1),
    "gamma": ("diag", 0, 0),
    "delta": ("diag", 1, 1),
    "a_1_1": ("diag", 0, -1),
    "a_3_2": ("diag", -1, 0),
    "b_0_2": ("vert", 0, -2),
    "b_1_2": ("vert", 0, -1),
    "b_1_3": ("vert", -1, -2),
    "b_2_1": ("vert", 1, 1),
    "b_2_2": ("vert", 0, 0),
    "b_3_2": ("vert", 0, 1),
    "c_0_0": ("horiz", 1, 0),
    "c_1_0": ("horiz", 1, 1),
    "c_1_1": ("horiz", 0, 0),
    "c_2_2": ("horiz", -1, 0),
    "c_2_3": ("horiz", -2, -1),
    "c_3_3": ("horiz", -2, 0),
}

_STRUCTURED_RE = re.compile(r"^([abcd])_(-?\d+)_(-?\d+)$")


def _corners(tri: Triangle) -> tuple[tuple[int, int], ...]:
    o, a, b = tri
    if o == 0:
        return ((a, b), (a + 1, b), (a + 1, b + 1))
    return ((a, b), (a, b + 1), (a + 1, b + 1))


class HexGraph:
    """Immutable honeycomb graph; build with :func:`build_honeycomb`."""

    __slots__ = (
        "k", "m", "n", "vertices", "vertex_index", "edges", "edge_pos",
        "pos_index", "labels", "edge_names", "adjacency", "_pair_index",
    )

    def __init__(self, k, m, n, vertices, edges, edge_pos, labels, edge_names):
        self.k = k
        self.m = m
        self.n = n
        self.vertices: tuple[Triangle, ...] = vertices
        self.vertex_index = {t: i for i, t in enumerate(vertices)}
        self.edges: tuple[tuple[int, int], ...] = edges
        self.edge_pos: tuple[EdgePos, ...] = edge_pos
        self.pos_index = {p: i for i, p in enumerate(edge_pos)}
        self.labels: dict[str, int] = labels
        self.edge_names: tuple[str, ...] = edge_names
        adjacency: list[list[tuple[int, int]]] = [[] for _ in vertices]
        for ei, (u, v) in enumerate(edges):
            adjacency[u].append((ei, v))
            adjacency[v].append((ei, u))
        self.adjacency = tuple(tuple(nbrs) for nbrs in adjacency)
        self._pair_index = {frozenset(uv): i for i, uv in enumerate(edges)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.k, self.m, self.n)

    def contains_point(self, point: tuple[int, int]) -> bool:
        x, y = point
        return -self.n <= x <= self.k and -self.n <= y <= self.m \
            and -self.k <= y - x <= self.m

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __repr__(self) -> str:
        return (f"HexGraph({self.k}x{self.m}x{self.n}, "
                f"{self.n_vertices} vertices, {len(self.edges)} edges)")


def honeycomb_vertex_count(k: int, m: int, n: int) -> int:
    """Number of unit triangles of the (k, m, n) hexagon."""
    return 2 * (k * m + k * n + m * n)


def honeycomb_edge_count(k: int, m: int, n: int) -> int:
    """Number of interior lattice edges, i.e. honeycomb edges."""
    return 3 * (k * m + k * n + m * n) - (k + m + n)


def structured_label_pos(family: str, i: int, j: int) -> EdgePos:
    """Lattice position of a k = 1 structured label (no range checking)."""
    if family == "a":
        return ("diag", -j, i - 1 - j)
    if family == "b":
        return ("vert", 1 - j, i - j)
    if family == "d":
        return ("horiz", -j, i - j)
    raise LabelError(f"unknown label family {family!r}")


def structured_label_ranges(m: int, n: int):
    """Yield every valid (family, i, j) for a 1 x m x n graph, in canonical order."""
    for i in range(1, m + 1):
        for j in range(0, n + 1):
            yield ("a", i, j)
    for i in range(0, m + 1):
        for j in range(1, n + 1):
            yield ("b", i, j)
    for i in range(0, m + 1):
        for j in range(0, n + 1):
            if (i, j) != (0, n) and (i, j) != (m, 0):
                yield ("d", i, j)


def build_honeycomb(k: int, m: int, n: int, *, edge_cap: int = EDGE_CAP) -> HexGraph:
    """Construct H(k, m, n) with canonical vertex and edge order.

    Edges are ordered by (family, i, j) of their structured label when
    k = 1, and by the sorted coordinate pair of their endpoints otherwise,
    so indices are reproducible across runs.  Raises :class:`SizeCapError`
    when the edge count would exceed ``edge_cap``.
    """
    if min(k, m, n) < 1:
        raise ValueError("box dimensions must be positive")
    n_edges = honeycomb_edge_count(k, m, n)
    if n_edges > edge_cap:
        raise SizeCapError(
            f"graph too large: {n_edges} edges exceeds the cap of {edge_cap}")

    def inside(p: tuple[int, int]) -> bool:
        x, y = p
        return -n <= x <= k and -n <= y <= m and -k <= y - x <= m

    tris: list[Triangle] = []
    for a in range(-n, k):
        for b in range(-n, m):
            for o in (0, 1):
                if all(inside(c) for c in _corners((o, a, b))):
                    tris.append((o, a, b))
    tris.sort(key=lambda t: (t[1], t[2], t[0]))
    vertices = tuple(tris)
    tidx = {t: i for i, t in enumerate(vertices)}

    pos_to_pair: dict[EdgePos, tuple[int, int]] = {}
    for (o, a, b) in vertices:
        if o != 0:
            continue
        lower = tidx[(0, a, b)]
        if (1, a, b) in tidx:
            pos_to_pair[("diag", a, b)] = (lower, tidx[(1, a, b)])
        if (1, a, b - 1) in tidx:
            pos_to_pair[("horiz", a, b)] = (lower, tidx[(1, a, b - 1)])
        if (1, a + 1, b) in tidx:
            pos_to_pair[("vert", a + 1, b)] = (tidx[(1, a + 1, b)], lower)
    assert len(pos_to_pair) == n_edges
    assert len(vertices) % 2 == 0

    labels: dict[str, int] = {}
    if k == 1:
        ordered = [structured_label_pos(*lab) for lab in structured_label_ranges(m, n)]
        assert set(ordered) == set(pos_to_pair), "structured labels must cover the edge set"
        edge_pos = tuple(ordered)
    else:
        vkey = lambda t: (t[1], t[2], t[0])
        edge_pos = tuple(sorted(
            pos_to_pair,
            key=lambda p: tuple(sorted(map(vkey, (vertices[q] for q in pos_to_pair[p])))),
        ))
    pos_index = {p: i for i, p in enumerate(edge_pos)}
    edges = tuple(pos_to_pair[p] for p in edge_pos)

    names: list[str | None] = [None] * len(edges)
    if k == 1:
        for lab in structured_label_ranges(m, n):
            name = "{}_{}_{}".format(*lab)
            idx = pos_index[structured_label_pos(*lab)]
            labels[name] = idx
            names[idx] = name
        labels["x"] = labels["d_0_0"]
        labels["y"] = labels[f"d_{m}_{n}"]
        if f"d_{m - 1}_1" in labels:
            labels["z"] = labels[f"d_{m - 1}_1"]
    elif (k, m, n) == (2, 2, 2):
        for name, pos in ALIASES_2X2X2.items():
            idx = pos_index[pos]
            labels[name] = idx
            if names[idx] is None:
                names[idx] = name
    edge_names = tuple(
        name if name is not None else "{}({},{})".format(*edge_pos[i])
        for i, name in enumerate(names)
    )

    g = HexGraph(k, m, n, vertices, edges, edge_pos, labels, edge_names)
    if (k, m, n) == (2, 2, 2):
        _check_alias_signatures(g)
    return g


def _check_alias_signatures(g: HexGraph) -> None:
    """Guard the 2x2x2 alias table against transcription errors.

    Checks, over the twenty perfect matchings indexed by their 2x2 height
    tableaux (a b / c d): alpha lies exactly in the matchings with a = 2;
    beta exactly in {a = 1} plus the all-2 matching; gamma exactly in
    {d = 1} plus the all-0 matching; delta exactly in {d = 0}; the
    matchings (2,2/2,1), (1,1/1,1) and (2,2/2,2) intersect precisely in
    {c_0_0, c_1_0, b_2_1, b_3_2}; and each of the four classes
    {a=2,d=0}, {a=1,d=0}, {a=2,d=1}, {(1,1/1,1)} has a member containing
    all of {b_0_2, a_1_1, c_0_0, c_3_3, a_3_2, b_3_2}.
    """
    from .partitions import enumerate_plane_partitions, pp_to_matching

    bit = {name: 1 << g.labels[name] for name in ALIASES_2X2X2}
    parts = enumerate_plane_partitions(2, 2, 2)
    match = {p.rows: pp_to_matching(g, p).bits for p in parts}

    def klass(a=None, b=None, c=None, d=None):
        want = ((a, b), (c, d))
        return [
            rows for rows in match
            if all(want[i][j] is None or want[i][j] == rows[i][j]
                   for i in range(2) for j in range(2))
        ]

    def support(name):
        return {rows for rows, mb in match.items() if mb & bit[name]}

    full, empty = ((2, 2), (2, 2)), ((0, 0), (0, 0))
    checks = [
        support("alpha") == set(klass(a=2)),
        support("beta") == set(klass(a=1)) | {full},
        support("gamma") == set(klass(d=1)) | {empty},
        support("delta") == set(klass(d=0)),
    ]
    triple = match[((2, 2), (2, 1))] & match[((1, 1), (1, 1))] & match[full]
    checks.append(triple == bit["c_0_0"] | bit["c_1_0"] | bit["b_2_1"] | bit["b_3_2"])
    six = (bit["b_0_2"] | bit["a_1_1"] | bit["c_0_0"] | bit["c_3_3"]
           | bit["a_3_2"] | bit["b_3_2"])
    for cls in (klass(a=2, d=0), klass(a=1, d=0), klass(a=2, d=1),
                [((1, 1), (1, 1))]):
        checks.append(any(match[rows] & six == six for rows in cls))
    if not all(checks):
        bad = [i for i, ok in enumerate(checks) if not ok]
        raise AssertionError(f"2x2x2 alias table failed signature checks {bad}")


def resolve_label(g: HexGraph, label) -> int:
    """Resolve an edge label to its edge index.

    Accepts a label string (structured ``a_i_j``/``b_i_j``/``d_i_j`` for
    k = 1, the 2x2x2 alias names, or the reserved names x, y, z,
    alpha..delta), a lattice position triple ``(kind, a, b)``, or a raw
    pair of triangle vertices.  Raises :class:`LabelError` when the label
    does not name an edge of ``g``.
    """
    if isinstance(label, str):
        if label in g.labels:
            return g.labels[label]
        m = _STRUCTURED_RE.match(label)
        if m and g.k == 1:
            fam, i, j = m.group(1), int(m.group(2)), int(m.group(3))
            if fam == "d" and (i, j) in ((0, g.n), (g.m, 0)):
                raise LabelError(
                    f"label {label!r} is excluded: d_0_n and d_m_0 name no edge")
            raise LabelError(
                f"label {label!r} is outside the valid ranges for a "
                f"1x{g.m}x{g.n} graph")
        raise LabelError(f"unknown label {label!r} for {g!r}")
    if isinstance(label, tuple) and len(label) == 3 and isinstance(label[0], str):
        try:
            return g.pos_index[label]
        except KeyError:
            raise LabelError(f"no edge at lattice position {label!r}") from None
    if isinstance(label, tuple) and len(label) == 2:
        try:
            u = label[0] if isinstance(label[0], int) else g.vertex_index[label[0]]
            v = label[1] if isinstance(label[1], int) else g.vertex_index[label[1]]
            return g._pair_index[frozenset((u, v))]
        except KeyError:
            raise LabelError(f"no edge joining {label!r}") from None
    raise LabelError(f"unsupported label {label!r}")


def edge_name(g: HexGraph, index: int) -> str:
    """Canonical display name of an edge (label when one exists)."""
    return g.edge_names[index]


def significant_edges(g: HexGraph) -> frozenset[int]:
    """Indices of the edges d_{i,j}, 1 <= i <= m-1, 1 <= j <= n-1.

    These are exactly the edges common to the two extreme matchings
    (all-zero and all-n heights); defined for k = 1 with m, n >= 2.
    """
    if g.k != 1:
        raise ValueError("significant edges are defined for 1 x m x n graphs only")
    if g.m < 2 or g.n < 2:
        raise ValueError("significant edges require m >= 2 and n >= 2")
    return frozenset(
        g.pos_index[structured_label_pos("d", i, j)]
        for i in range(1, g.m)
        for j in range(1, g.n)
    )


def to_json(g: HexGraph) -> str:
    """Serialize the graph: dimensions, vertices, edges and label table."""
    doc = {
        "k": g.k,
        "m": g.m,
        "n": g.n,
        "vertices": [list(t) for t in g.vertices],
        "edges": [list(e) for e in g.edges],
        "labels": {name: idx for name, idx in sorted(g.labels.items())},
    }
    return json.dumps(doc, sort_keys=True, indent=2)


def to_dot(g: HexGraph) -> str:
    """GraphViz rendering with triangle coordinates and edge labels."""
    lines = [f"graph H_{g.k}x{g.m}x{g.n} {{"]
    for i, (o, a, b) in enumerate(g.vertices):
        kind = "L" if o == 0 else "U"
        lines.append(f'  t{i} [label="{kind}({a},{b})"];')
    for i, (u, v) in enumerate(g.edges):
        lines.append(f'  t{u} -- t{v} [label="{g.edge_names[i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SimpleGraph:
    """A plain indexed graph, for baseline cases (paths, cycles, K_{a,b})."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for ei, (u, v) in enumerate(self.edges):
            adjacency[u].append((ei, v))
            adjacency[v].append((ei, u))
        object.__setattr__(self, "adjacency",
                           tuple(tuple(nbrs) for nbrs in adjacency))


def path_graph(n_vertices: int) -> SimpleGraph:
    return SimpleGraph(n_vertices, tuple((i, i + 1) for i in range(n_vertices - 1)))


def cycle_graph(n_vertices: int) -> SimpleGraph:
    edges = tuple((i, (i + 1) % n_vertices) for i in range(n_vertices))
    return SimpleGraph(n_vertices, edges)


def complete_bipartite_graph(a: int, b: int) -> SimpleGraph:
    edges = tuple((i, a + j) for i in range(a) for j in range(b))
    return SimpleGraph(a + b, edges)
