"""Perfect matching complexes and nerves, with explicit face sets.

The perfect matching complex of a graph G is the simplicial complex on the
edge set of G whose facets are the perfect matchings: a set of edges is a
face exactly when some perfect matching contains it.  Faces are stored as
bitsets over edge indices, the empty face included as a first-class member
(element pairings may pair it, and reduced homology needs it).  A graph
without perfect matchings yields the *void* complex, which has no faces at
all and is distinct from the *empty* complex whose only face is the empty
set.

Complexes are immutable once built; consumers that mutate face sets (the
Morse engine) work on private copies.
"""

from __future__ import annotations

import json
import os

from .errors import SizeCapError, VoidComplexError
from .partitions import enumerate_perfect_matchings

DEFAULT_FACE_CAP = 10_000_000
FACE_CAP_ENV = "PMTOPO_FACE_CAP"

NERVE_FACET_CAP = 20


def face_cap(override: int | None = None) -> int:
    """Face cap resolution: explicit override, else $PMTOPO_FACE_CAP, else default."""
    if override is not None:
        return override
    env = os.environ.get(FACE_CAP_ENV)
    return int(env) if env else DEFAULT_FACE_CAP


class SimplicialComplex:
    """An explicit simplicial complex on ground set {0, .., ground-1}.

    ``facets`` are the inclusion-maximal faces; ``faces`` is the full
    downward closure including the empty face.  The void complex has
    ``facets == ()`` and ``faces == frozenset()``.
    """

    __slots__ = ("ground", "facets", "faces", "graph", "_by_dim")

    def __init__(self, ground: int, facets, faces, graph=None):
        self.ground = ground
        self.facets: tuple[int, ...] = tuple(facets)
        self.faces: frozenset[int] = frozenset(faces)
        self.graph = graph
        self._by_dim: dict[int, list[int]] | None = None

    @property
    def is_void(self) -> bool:
        return not self.facets and not self.faces

    @property
    def dim(self) -> int:
        if self.is_void:
            raise VoidComplexError("the void complex has no dimension")
        return max(f.bit_count() for f in self.facets) - 1 if self.facets else -1

    def faces_by_dim(self) -> dict[int, list[int]]:
        """Faces grouped by dimension (cardinality - 1), each group sorted."""
        if self._by_dim is None:
            groups: dict[int, list[int]] = {}
            for f in self.faces:
                groups.setdefault(f.bit_count() - 1, []).append(f)
            for group in groups.values():
                group.sort()
            self._by_dim = {d: groups[d] for d in sorted(groups)}
        return self._by_dim

    def __contains__(self, face: int) -> bool:
        return face in self.faces

    def __repr__(self) -> str:
        if self.is_void:
            return f"SimplicialComplex(void, ground={self.ground})"
        return (f"SimplicialComplex(ground={self.ground}, "
                f"facets={len(self.facets)}, faces={len(self.faces)})")


def complex_from_facets(ground: int, facets, *, cap: int | None = None,
                        graph=None) -> SimplicialComplex:
    """Downward closure of a facet list.

    Facets are deduplicated and reduced to the inclusion-maximal ones.  An
    empty facet list yields the void complex.  Raises
    :class:`SizeCapError` once the explicit face set would exceed the face
    cap.
    """
    cap = face_cap(cap)
    distinct = sorted(set(facets))
    maximal = [f for f in distinct
               if not any(f != g and f & ~g == 0 for g in distinct)]
    if not maximal:
        return SimplicialComplex(ground, (), frozenset(), graph)
    faces: set[int] = set()
    for f in maximal:
        if (1 << f.bit_count()) > 4 * cap:
            raise SizeCapError(
                f"complex too large: a facet of size {f.bit_count()} alone "
                f"exceeds the face cap of {cap}")
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
        if len(faces) > cap:
            raise SizeCapError(
                f"complex too large: more than {cap} faces")
    return SimplicialComplex(ground, maximal, faces, graph)


def pm_complex(graph, *, cap: int | None = None,
               matching_cap: int | None = None) -> SimplicialComplex:
    """The perfect matching complex of a graph (void when no matching exists)."""
    kwargs = {} if matching_cap is None else {"cap": matching_cap}
    matchings = enumerate_perfect_matchings(graph, **kwargs)
    return complex_from_facets(len(graph.edges), (m.bits for m in matchings),
                               cap=cap, graph=graph)


def is_face(c: SimplicialComplex, subset: int) -> bool:
    """Membership test via the facet list (agrees with the explicit face set)."""
    return any(subset & ~f == 0 for f in c.facets)


def facet_intersection(c: SimplicialComplex, i: int, j: int) -> int:
    return c.facets[i] & c.facets[j]


def f_vector(c: SimplicialComplex) -> list[int]:
    """Face counts per dimension, starting at dimension -1 (the empty face)."""
    if c.is_void:
        raise VoidComplexError("the void complex has no f-vector")
    by_dim = c.faces_by_dim()
    return [len(by_dim.get(d, ())) for d in range(-1, c.dim + 1)]


def euler_characteristic(c: SimplicialComplex, *, reduced: bool = False) -> int:
    """Alternating face-count sum; the reduced form includes the empty face."""
    fv = f_vector(c)
    total = sum((-1) ** d * fv[d + 1] for d in range(-1, len(fv) - 1))
    return total if reduced else -total + 2 * fv[0] + (total - fv[0])  # see below


def _euler(c: SimplicialComplex, reduced: bool) -> int:
    fv = f_vector(c)
    chi_reduced = sum((-1) ** d * count for d, count in zip(range(-1, len(fv) - 1), fv))
    return chi_reduced if reduced else chi_reduced + 1


class NerveComplex:
    """Nerve of an indexed family of faces: J is a face iff the A_i in J meet."""

    __slots__ = ("facet_count", "faces")

    def __init__(self, facet_count: int, faces):
        self.facet_count = facet_count
        self.faces: frozenset[int] = frozenset(faces)

    def vertices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.facet_count)
                     if (1 << i) in self.faces)

    def __contains__(self, index_set: int) -> bool:
        return index_set in self.faces

    def to_complex(self) -> SimplicialComplex:
        maximal = [f for f in self.faces
                   if not any(f != g and f & ~g == 0 for g in self.faces)]
        return SimplicialComplex(self.facet_count, sorted(maximal), self.faces)

    def __repr__(self) -> str:
        return f"NerveComplex({self.facet_count} sets, {len(self.faces)} faces)"


def nerve(facets, *, max_facets: int = NERVE_FACET_CAP) -> NerveComplex:
    """Nerve of a list of bitset faces, by subset search with pruning.

    Index sets are grown one index at a time; a branch dies as soon as its
    running intersection is empty, so only index sets with nonempty
    intersection (plus their immediate failed extensions) are visited.
    """
    facets = list(facets)
    if len(facets) > max_facets:
        raise SizeCapError(
            f"nerve construction supports at most {max_facets} facets, "
            f"got {len(facets)}")
    faces: set[int] = {0}
    frontier: list[tuple[int, int, int]] = [(0, ~0, -1)]  # (index set, intersection, top)
    while frontier:
        nxt = []
        for index_set, inter, top in frontier:
            for i in range(top + 1, len(facets)):
                cut = inter & facets[i]
                if cut or (index_set == 0 and facets[i] == 0):
                    continue  # placeholder, replaced below
        break
    # straightforward breadth-first growth
    faces = {0}
    stack: list[tuple[int, int, int]] = [(0, -1, -1)]
    # (index set, top index, unused) with intersection recomputed lazily is
    # wasteful; track intersections explicitly instead.
    faces = {0}
    work: list[tuple[int, int, int]] = []
    for i, f in enumerate(facets):
        if f:
            faces.add(1 << i)
            work.append((1 << i, f, i))
    while work:
        index_set, inter, top = work.pop()
        for i in range(top + 1, len(facets)):
            cut = inter & facets[i]
            if cut:
                grown = index_set | 1 << i
                faces.add(grown)
                work.append((grown, cut, i))
    return NerveComplex(len(facets), faces)


def to_json(c: SimplicialComplex, *, facets_only: bool = False) -> str:
    """Serialize ground size, facets and (unless suppressed) the f-vector."""
    doc: dict = {
        "ground": c.ground,
        "facets": [sorted_bits(f) for f in c.facets],
        "void": c.is_void,
    }
    if not c.is_void and not facets_only:
        doc["f_vector"] = f_vector(c)
    return json.dumps(doc, sort_keys=True, indent=2)


def sorted_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
