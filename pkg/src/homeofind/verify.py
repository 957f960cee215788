"""Search-free certificate validation and brute-force oracles.

The verifier never trusts the pipeline: it re-derives the canonical glued
subdivision of the target and demands that the certificate's faces, after
relabeling through the recorded embedding, match it face for face.  The
oracles back the search stages' exact expectation identities in rational
arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import ThreeGraph, TripartiteHost, build_aux_graph, covered_pairs
from .embed import HomeomorphCertificate, ProblemGraph
from .links import HostIndex, iter_link_cycles

Label = tuple


@dataclass(frozen=True)
class CanonicalGluedSubdivision:
    """The abstract complex every certificate must realize.

    For each face f = xyz of the target and each edge e = ab of f there is a
    disk vertex w = w_{f,e} carrying the four faces {a, u_e, w}, {u_e, b, w},
    {b, u_f, w} and {u_f, a, w}.
    """

    labels: tuple[Label, ...]
    faces: frozenset[frozenset[Label]]

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def one_cell_count(self) -> int:
        cells = set()
        for f in self.faces:
            for a, b in itertools.combinations(sorted(f), 2):
                cells.add((a, b))
        return len(cells)

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.one_cell_count() + self.face_count


def canonical_glued_subdivision(h: ThreeGraph) -> CanonicalGluedSubdivision:
    pairs = covered_pairs(h)
    hfaces = h.sorted_faces()
    labels: list[Label] = [("orig", x) for x in range(h.vertex_count)]
    labels += [("pair", p) for p in pairs]
    labels += [("facevtx", f) for f in hfaces]
    faces: set[frozenset[Label]] = set()
    for f in hfaces:
        x, y, z = f
        uf = ("facevtx", f)
        for a, b in ((x, y), (y, z), (z, x)):
            e = (min(a, b), max(a, b))
            w = ("corner", f, e)
            labels.append(w)
            ue = ("pair", e)
            faces.add(frozenset({("orig", a), ue, w}))
            faces.add(frozenset({ue, ("orig", b), w}))
            faces.add(frozenset({("orig", b), uf, w}))
            faces.add(frozenset({uf, ("orig", a), w}))
    return CanonicalGluedSubdivision(labels=tuple(labels), faces=frozenset(faces))


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    check: int | None = None
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.passed


def _fail(check: int, reason: str, witness=None) -> VerifyResult:
    return VerifyResult(passed=False, check=check, reason=reason, witness=witness)


def verify_certificate(cert: HomeomorphCertificate, host: TripartiteHost) -> VerifyResult:
    """Check a certificate against the host; trusts nothing.

    Runs six checks in order and reports the first violation:
    (1) all faces exist in the host, (2) face count is 12 e(H),
    (3) embedding maps are injective, (4) centers are distinct,
    (5) the relabeled face set equals the canonical glued subdivision,
    (6) the Euler characteristic of the certificate complex equals the
    target's.
    """
    target = cert.target
    emb = cert.embedding

    # (1) membership
    for f in cert.host_faces:
        if f not in host.faces:
            return _fail(1, f"certificate face {f} not a face of the host", f)

    # (2) face count
    expected = 12 * target.e
    if len(cert.host_faces) != expected:
        return _fail(
            2,
            f"certificate lists {len(cert.host_faces)} faces, expected {expected}",
            len(cert.host_faces),
        )

    # (3) injectivity of the vertex maps
    for name, m in (("v1_map", emb.v1_map), ("v2_map", emb.v2_map)):
        if len(set(m.values())) != len(m):
            return _fail(3, f"{name} is not injective", m)

    # (4) distinct centers
    if len(set(emb.center_map.values())) != len(emb.center_map):
        return _fail(4, "4-disk centers are not pairwise distinct", emb.center_map)

    # (5) relabel through the embedding and compare with the canonical shape
    aux = build_aux_graph(target)
    v1_inv = {y: v for v, y in emb.v1_map.items()}
    v2_inv = {x: u for u, x in emb.v2_map.items()}
    center_inv = {z: ci for ci, z in emb.center_map.items()}
    tag_of_v2 = {u: tag for u, tag in zip(aux.v2, aux.v2_tags)}

    relabeled: set[frozenset[Label]] = set()
    for x, y, z in cert.host_faces:
        if x not in v2_inv or y not in v1_inv or z not in center_inv:
            return _fail(
                5, f"face {(x, y, z)} has a vertex outside the embedding image", (x, y, z)
            )
        tag = tag_of_v2[v2_inv[x]]
        xl: Label = ("pair", tag[1]) if tag[0] == "pair" else ("facevtx", tag[1])
        sc = aux.special_cycles[center_inv[z]]
        relabeled.add(frozenset({xl, ("orig", v1_inv[y]), ("corner", sc.face, sc.edge)}))

    canon = canonical_glued_subdivision(target)
    if relabeled != canon.faces:
        missing = canon.faces - relabeled
        extra = relabeled - canon.faces
        return _fail(
            5,
            "relabeled faces differ from the canonical glued subdivision",
            {"missing": sorted(map(sorted, missing))[:4], "extra": sorted(map(sorted, extra))[:4]},
        )

    # (6) Euler characteristic of the certificate complex
    v_count = len(emb.v1_map) + len(emb.v2_map) + len(emb.center_map)
    cells = set()
    for x, y, z in set(cert.host_faces):
        for a, b in itertools.combinations((("x", x), ("y", y), ("z", z)), 2):
            cells.add((a, b))
    chi_cert = v_count - len(cells) + len(set(cert.host_faces))
    chi_target = target.vertex_count - len(covered_pairs(target)) + target.e
    if chi_cert != chi_target:
        return _fail(
            6,
            f"certificate complex has chi = {chi_cert}, target has chi = {chi_target}",
            (chi_cert, chi_target),
        )

    return VerifyResult(passed=True)


def expectation_oracle(host: TripartiteHost) -> Fraction:
    """Average link size over Z, exact; asserts it equals e(G)/n_Z."""
    if host.n_z < 1:
        raise ValueError("host has no Z vertices")
    index = HostIndex(host)
    avg = Fraction(sum(index.link(z).e for z in range(host.n_z)), host.n_z)
    assert avg == Fraction(host.e, host.n_z), "link-size expectation identity violated"
    return avg


def forbidden_expectation_oracle(host: TripartiteHost, K: int) -> Fraction:
    """Average forbidden-cycle count over Z, with the double-count identity.

    Asserts sum_z B_z = sum over forbidden cycles of their disk counts, and
    that the average is at most (K/n_Z) times the global forbidden-cycle
    count (the bound behind E[B_z] <= K_H * n**3).
    """
    if host.n_z < 1:
        raise ValueError("host has no Z vertices")
    index = HostIndex(host)

    # disk counts of every cycle that appears in at least one link
    counts: dict = {}
    total_b = 0
    for z in range(host.n_z):
        for c in iter_link_cycles(index.link(z)):
            if c not in counts:
                counts[c] = index.disk_count(c)
    sum_forbidden_disks = sum(d for d in counts.values() if d <= K)
    for z in range(host.n_z):
        total_b += sum(1 for c in iter_link_cycles(index.link(z)) if counts[c] <= K)

    assert total_b == sum_forbidden_disks, "forbidden double-count identity violated"
    avg = Fraction(total_b, host.n_z)

    admissible = sum(1 for d in counts.values() if d > K)
    global_forbidden = comb(host.n_x, 2) * comb(host.n_y, 2) - admissible
    assert avg <= Fraction(K * global_forbidden, host.n_z), (
        "forbidden expectation bound violated"
    )
    return avg


def clique_oracle(p: ProblemGraph, t: int) -> bool:
    """Ground truth for find_complete_subgraph by exhaustive t-subset scan."""
    verts = p.ground_set
    if len(verts) > 40:
        raise ValueError("clique_oracle is exponential; |Y'| must be <= 40")
    if t <= 0:
        return True
    if t > len(verts):
        return False
    bad = p.bad_triples
    for subset in itertools.combinations(verts, t):
        if all(tr not in bad for tr in itertools.combinations(subset, 3)):
            return True
    return False
