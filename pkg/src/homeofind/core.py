"""Canonical data model for 3-graphs viewed as 2-complexes.

A 3-graph is a 3-uniform hypergraph; identifying each edge with a triangular
face turns it into a two-dimensional simplicial complex.  This module holds
the immutable value types shared by the whole pipeline together with the two
target-side constructions: the 3-partite subdivision of a target and its
bipartite auxiliary graph whose special 4-cycles mark where 4-disks must be
glued.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Face = tuple[int, int, int]
Pair = tuple[int, int]


def _norm_face(face: Iterable[int]) -> Face:
    a, b, c = sorted(face)
    if a == b or b == c:
        raise ValueError(f"face {face!r} has repeated vertices")
    return (a, b, c)


@dataclass(frozen=True)
class ThreeGraph:
    """A finite 3-uniform hypergraph on vertices 0..vertex_count-1."""

    vertex_count: int
    faces: frozenset[Face]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        object.__setattr__(self, "faces", frozenset(_norm_face(f) for f in self.faces))
        for f in self.faces:
            if f[2] >= self.vertex_count or f[0] < 0:
                raise ValueError(f"face {f} out of range")

    @property
    def v(self) -> int:
        return self.vertex_count

    @property
    def e(self) -> int:
        return len(self.faces)

    def sorted_faces(self) -> list[Face]:
        return sorted(self.faces)


@dataclass(frozen=True)
class TripartiteHost:
    """A 3-partite 3-graph with classes X, Y, Z and per-class 0-based indices."""

    class_sizes: tuple[int, int, int]
    faces: frozenset[Face]

    def __post_init__(self):
        nx, ny, nz = self.class_sizes
        if min(nx, ny, nz) < 0:
            raise ValueError("class sizes must be non-negative")
        object.__setattr__(self, "faces", frozenset(tuple(f) for f in self.faces))
        for x, y, z in self.faces:
            if not (0 <= x < nx and 0 <= y < ny and 0 <= z < nz):
                raise ValueError(f"face {(x, y, z)} out of class bounds")

    @property
    def n_x(self) -> int:
        return self.class_sizes[0]

    @property
    def n_y(self) -> int:
        return self.class_sizes[1]

    @property
    def n_z(self) -> int:
        return self.class_sizes[2]

    @property
    def e(self) -> int:
        return len(self.faces)

    def sorted_faces(self) -> list[Face]:
        return sorted(self.faces)


# Colors of the 3-partition of a subdivided complex.
RED = "red"
BLUE = "blue"
GREEN = "green"


@dataclass(frozen=True)
class SubdividedComplex:
    """A 3-partite subdivision of a target, 12 faces per original face.

    ``provenance`` tags every vertex with its origin: ``("orig", x)`` for an
    original vertex, ``("pair", (a, b))`` for the midpoint of a covered pair,
    ``("center", f)`` for the center of face f, and ``("corner", f, x)`` for
    the corner vertex of face f at original vertex x.
    """

    underlying: ThreeGraph
    color: dict[int, str]
    provenance: dict[int, tuple]


@dataclass(frozen=True)
class SpecialCycle:
    """One of the three distinguished 4-cycles arising from a face.

    The cycle visits a, u, b, w in order: a and b are original vertices, u is
    the pair-vertex of the pair ab and w the face-vertex of ``face``.
    """

    a: int
    u: int
    b: int
    w: int
    face: Face
    edge: Pair


@dataclass(frozen=True)
class AuxGraph:
    """The bipartite auxiliary graph of a target.

    v1 holds the original vertices; v2 holds one vertex per covered pair and
    one per face.  ``v2_tags`` records, aligned with v2, either
    ``("pair", (a, b))`` or ``("face", (a, b, c))``.
    """

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    v2_tags: tuple[tuple, ...]
    edges: frozenset[tuple[int, int]]
    special_cycles: tuple[SpecialCycle, ...]

    def neighbors_of_v2(self, u: int) -> tuple[int, ...]:
        tag = self.v2_tags[u - len(self.v1)]
        return tag[1]

    def degree_of_v2(self, u: int) -> int:
        return len(self.neighbors_of_v2(u))


@dataclass(frozen=True)
class Config:
    """Pipeline knobs.

    C and the exponents are exact rationals so that every threshold
    comparison stays exact.  ``k_threshold`` is the admissibility cutoff K
    (a 4-cycle is admissible when it bounds more than K 4-disks); when None
    it defaults to 3*v(H)**3 for the target at hand.  The certificate gluing
    step needs k_threshold >= 3*e(H); this is checked when gluing is
    requested.
    """

    C: Fraction = Fraction(1)
    delta: Fraction = Fraction(1, 5)
    epsilon: Fraction = Fraction(1, 5)
    k_threshold: int | None = None
    rng_seed: int = 0
    retry_limit: int = 64

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.C <= 0:
            raise ValueError("C must be positive")
        if not 0 < self.epsilon <= self.delta <= 1:
            raise ValueError("need 0 < epsilon <= delta <= 1")
        if self.k_threshold is not None and self.k_threshold <= 0:
            raise ValueError("k_threshold must be positive")
        if self.retry_limit <= 0:
            raise ValueError("retry_limit must be positive")

    def k_for(self, target: ThreeGraph) -> int:
        if self.k_threshold is not None:
            return self.k_threshold
        return 3 * target.v ** 3

    @classmethod
    def paper_defaults(cls, target: ThreeGraph, **overrides) -> "Config":
        """The asymptotic constants: C = 2000 v(H)**6, K = 3 v(H)**3."""
        kw = dict(C=Fraction(2000) * target.v ** 6, k_threshold=3 * target.v ** 3)
        kw.update(overrides)
        return cls(**kw)

    @classmethod
    def desk_scale(cls, target: ThreeGraph, **overrides) -> "Config":
        """Small-host settings: K at its gluing floor 3*e(H), C = 1."""
        kw = dict(C=Fraction(1), k_threshold=max(1, 3 * target.e))
        kw.update(overrides)
        return cls(**kw)


def covered_pairs(h: ThreeGraph) -> list[Pair]:
    """Pairs of vertices contained in at least one face, lexicographic."""
    pairs = set()
    for f in h.faces:
        pairs.update(itertools.combinations(f, 2))
    return sorted(pairs)


def euler_characteristic(h: ThreeGraph) -> int:
    """V - E + F of the geometric realization.

    Only pairs covered by a face count as 1-cells; isolated vertices count
    toward V.
    """
    return h.vertex_count - len(covered_pairs(h)) + h.e


def one_cells(h: ThreeGraph) -> list[Pair]:
    # alias with the geometric reading; identical to covered_pairs
    return covered_pairs(h)


def tripartite_reduce(h: ThreeGraph, seed: int, retry_limit: int = 1000) -> TripartiteHost:
    """Pass to a balanced 3-partition keeping at least ceil(2m/9) faces.

    A uniformly random balanced partition keeps each face with probability
    > 2/9, so resampling (seeded) terminates quickly; if v(h) is not a
    multiple of 3 up to two isolated vertices are padded on first.
    """
    v = h.vertex_count
    pad = (-v) % 3
    v += pad
    n = v // 3
    m = h.e
    bound = -(-2 * m // 9)  # ceil(2m/9)
    rng = random.Random(seed)
    verts = list(range(v))
    for attempt in range(retry_limit):
        rng.shuffle(verts)
        classes = [sorted(verts[:n]), sorted(verts[n:2 * n]), sorted(verts[2 * n:])]
        cls_of = {}
        local = {}
        for ci, members in enumerate(classes):
            for li, u in enumerate(members):
                cls_of[u] = ci
                local[u] = li
        kept = []
        for f in h.faces:
            cs = {cls_of[u] for u in f}
            if len(cs) == 3:
                triple = [0, 0, 0]
                for u in f:
                    triple[cls_of[u]] = local[u]
                kept.append(tuple(triple))
        if len(kept) >= bound:
            return TripartiteHost((n, n, n), frozenset(kept))
    raise RuntimeError(
        f"no balanced partition reached {bound} faces in {retry_limit} attempts "
        "(this should be unreachable: a random partition achieves the bound in expectation)"
    )


def build_triple_subdivision(h: ThreeGraph) -> SubdividedComplex:
    """The 3-partite subdivision: each face becomes twelve.

    Vertices: the originals (red), one shared midpoint per covered pair
    (blue), one center per face (red) and one corner vertex per (face,
    original-vertex) incidence (green).  For a face f and corner x with
    incident pair midpoints m1, m2 and corner vertex g, the four faces are
    {x, m1, g}, {x, g, m2}, {c_f, m1, g}, {c_f, g, m2}.
    """
    pairs = covered_pairs(h)
    faces_sorted = h.sorted_faces()

    idx = {}
    color = {}
    provenance = {}
    nxt = 0
    for x in range(h.vertex_count):
        idx[("orig", x)] = nxt
        color[nxt] = RED
        provenance[nxt] = ("orig", x)
        nxt += 1
    for p in pairs:
        idx[("pair", p)] = nxt
        color[nxt] = BLUE
        provenance[nxt] = ("pair", p)
        nxt += 1
    for f in faces_sorted:
        idx[("center", f)] = nxt
        color[nxt] = RED
        provenance[nxt] = ("center", f)
        nxt += 1
    for f in faces_sorted:
        for x in f:
            idx[("corner", f, x)] = nxt
            color[nxt] = GREEN
            provenance[nxt] = ("corner", f, x)
            nxt += 1

    new_faces = set()
    for f in faces_sorted:
        c = idx[("center", f)]
        for x in f:
            p1, p2 = sorted(p for p in itertools.combinations(f, 2) if x in p)
            m1, m2 = idx[("pair", p1)], idx[("pair", p2)]
            g = idx[("corner", f, x)]
            xv = idx[("orig", x)]
            new_faces.add(_norm_face((xv, m1, g)))
            new_faces.add(_norm_face((xv, g, m2)))
            new_faces.add(_norm_face((c, m1, g)))
            new_faces.add(_norm_face((c, g, m2)))

    return SubdividedComplex(
        underlying=ThreeGraph(nxt, frozenset(new_faces)),
        color=color,
        provenance=provenance,
    )


def build_aux_graph(h: ThreeGraph) -> AuxGraph:
    """The auxiliary bipartite graph with its special 4-cycles.

    One v2 vertex per covered pair (joined to its two endpoints) and one per
    face (joined to its three vertices); each face ``xyz`` contributes the
    special cycles (x, u_xy, y, u_xyz), (y, u_yz, z, u_xyz) and
    (z, u_zx, x, u_xyz).
    """
    pairs = covered_pairs(h)
    faces_sorted = h.sorted_faces()
    v1 = tuple(range(h.vertex_count))

    v2 = []
    tags = []
    pair_idx = {}
    face_idx = {}
    nxt = h.vertex_count
    for p in pairs:
        pair_idx[p] = nxt
        v2.append(nxt)
        tags.append(("pair", p))
        nxt += 1
    for f in faces_sorted:
        face_idx[f] = nxt
        v2.append(nxt)
        tags.append(("face", f))
        nxt += 1

    edges = set()
    for p in pairs:
        u = pair_idx[p]
        edges.add((p[0], u))
        edges.add((p[1], u))
    for f in faces_sorted:
        u = face_idx[f]
        for x in f:
            edges.add((x, u))

    cycles = []
    for f in faces_sorted:
        x, y, z = f
        w = face_idx[f]
        for a, b in ((x, y), (y, z), (z, x)):
            e = (min(a, b), max(a, b))
            cycles.append(SpecialCycle(a=a, u=pair_idx[e], b=b, w=w, face=f, edge=e))

    return AuxGraph(
        v1=v1,
        v2=tuple(v2),
        v2_tags=tuple(tags),
        edges=frozenset(edges),
        special_cycles=tuple(cycles),
    )
