"""Link graphs of host vertices, 4-cycle enumeration and classification.

The hot path here is counting, for every 4-cycle of a link, the number of
host vertices z whose link also contains it (its 4-disks).  We precompute,
for each (x, y) pair of the host, the bitmask of z-vertices completing it to
a face; a cycle's disk count is then a popcount of an AND of four masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Config, TripartiteHost
from .errors import NoQualifyingVertex
from .exact import EpsScale, cmp_pow


@dataclass(frozen=True)
class FourCycle:
    """A 4-cycle between X and Y in canonical form (x1 < x2, y1 < y2)."""

    x1: int
    x2: int
    y1: int
    y2: int

    def __post_init__(self):
        if not (self.x1 < self.x2 and self.y1 < self.y2):
            raise ValueError("FourCycle must be canonical: x1 < x2, y1 < y2")

    @classmethod
    def of(cls, xa, xb, ya, yb) -> "FourCycle":
        return cls(min(xa, xb), max(xa, xb), min(ya, yb), max(ya, yb))


@dataclass(frozen=True)
class CycleClassification:
    cycle: FourCycle
    disk_count: int
    admissible: bool  # True: admissible, False: forbidden


@dataclass(frozen=True)
class LinkGraph:
    """The bipartite X-Y graph of faces through a fixed z."""

    z: int
    n_x: int
    n_y: int
    edges: frozenset[tuple[int, int]]

    @property
    def e(self) -> int:
        return len(self.edges)

    def x_masks(self) -> list[int]:
        """Per x, the bitmask over Y of its neighbours."""
        masks = [0] * self.n_x
        for x, y in self.edges:
            masks[x] |= 1 << y
        return masks

    def y_masks(self) -> list[int]:
        masks = [0] * self.n_y
        for x, y in self.edges:
            masks[y] |= 1 << x
        return masks


class HostIndex:
    """Precomputed lookup structures for one host.

    Immutable once built; shared by every stage of a pipeline run.
    """

    def __init__(self, host: TripartiteHost):
        self.host = host
        self.face_set = host.faces
        self.zbits: dict[tuple[int, int], int] = {}
        self.faces_by_z: dict[int, list[tuple[int, int]]] = {}
        for x, y, z in host.faces:
            self.zbits[(x, y)] = self.zbits.get((x, y), 0) | (1 << z)
            self.faces_by_z.setdefault(z, []).append((x, y))

    def link(self, z: int) -> LinkGraph:
        if not 0 <= z < self.host.n_z:
            raise IndexError(f"z = {z} out of range")
        return LinkGraph(
            z=z,
            n_x=self.host.n_x,
            n_y=self.host.n_y,
            edges=frozenset(self.faces_by_z.get(z, ())),
        )

    def disk_count(self, c: FourCycle) -> int:
        zb = self.zbits
        m = (
            zb.get((c.x1, c.y1), 0)
            & zb.get((c.x1, c.y2), 0)
            & zb.get((c.x2, c.y1), 0)
            & zb.get((c.x2, c.y2), 0)
        )
        return m.bit_count()

    def disk_mask(self, xa: int, xb: int, ya: int, yb: int) -> int:
        """Bitmask over Z of the centers completing the cycle to 4-disks."""
        zb = self.zbits
        return (
            zb.get((xa, ya), 0)
            & zb.get((xa, yb), 0)
            & zb.get((xb, ya), 0)
            & zb.get((xb, yb), 0)
        )


def link_graph(host: TripartiteHost, z: int) -> LinkGraph:
    """The link of z: edges xy with xyz a face of the host."""
    return HostIndex(host).link(z)


def count_disks(host: TripartiteHost, c: FourCycle) -> int:
    """Number of z whose link contains the cycle; direct face-set scan.

    Deliberately independent of the bitmask index so the two code paths can
    be checked against each other.
    """
    count = 0
    for z in range(host.n_z):
        if (
            (c.x1, c.y1, z) in host.faces
            and (c.x1, c.y2, z) in host.faces
            and (c.x2, c.y1, z) in host.faces
            and (c.x2, c.y2, z) in host.faces
        ):
            count += 1
    return count


def iter_link_cycles(link: LinkGraph):
    """All 4-cycles of a link, via common neighbourhoods of X-pairs."""
    masks = link.x_masks()
    xs = [x for x in range(link.n_x) if masks[x]]
    for i, x1 in enumerate(xs):
        m1 = masks[x1]
        for x2 in xs[i + 1:]:
            common = m1 & masks[x2]
            if common.bit_count() < 2:
                continue
            ys = _bits(common)
            for j, y1 in enumerate(ys):
                for y2 in ys[j + 1:]:
                    yield FourCycle(x1, x2, y1, y2)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def classify_cycles(
    host: TripartiteHost, link: LinkGraph, K: int, index: HostIndex | None = None
) -> list[CycleClassification]:
    """Every 4-cycle of the link with its disk count and admissibility.

    A cycle is admissible when it bounds more than K 4-disks, forbidden
    otherwise.
    """
    index = index or HostIndex(host)
    out = []
    masks = link.x_masks()
    xs = [x for x in range(link.n_x) if masks[x]]
    for i, x1 in enumerate(xs):
        m1 = masks[x1]
        for x2 in xs[i + 1:]:
            common = m1 & masks[x2]
            if common.bit_count() < 2:
                continue
            ys = _bits(common)
            zmasks = [index.disk_mask(x1, x2, y, y) for y in ys]
            # disk_mask with ya == yb is the z-set containing both column
            # faces; AND-ing two of them gives the cycle's centers.
            for j, y1 in enumerate(ys):
                for k in range(j + 1, len(ys)):
                    d = (zmasks[j] & zmasks[k]).bit_count()
                    out.append(
                        CycleClassification(
                            cycle=FourCycle(x1, x2, y1, ys[k]),
                            disk_count=d,
                            admissible=d > K,
                        )
                    )
    return out


def count_forbidden(link: LinkGraph, K: int, index: HostIndex) -> int:
    """Number of forbidden 4-cycles in the link (cheap counting form)."""
    total = 0
    masks = link.x_masks()
    xs = [x for x in range(link.n_x) if masks[x]]
    for i, x1 in enumerate(xs):
        m1 = masks[x1]
        for x2 in xs[i + 1:]:
            common = m1 & masks[x2]
            if common.bit_count() < 2:
                continue
            ys = _bits(common)
            zmasks = [index.disk_mask(x1, x2, y, y) for y in ys]
            for j in range(len(ys)):
                zj = zmasks[j]
                for k in range(j + 1, len(ys)):
                    if (zj & zmasks[k]).bit_count() <= K:
                        total += 1
    return total


@dataclass(frozen=True)
class LinkChoice:
    z: int
    link: LinkGraph
    forbidden_count: int
    q: Fraction  # n**(-eps_realized), clamped to (0, 1]
    epsilon_realized: float


def pick_link_vertex(
    host: TripartiteHost, cfg: Config, K: int, index: HostIndex | None = None
) -> LinkChoice:
    """First z (in index order) whose link is dense with few forbidden cycles.

    Derandomizes the expectation argument over a random z by exhaustive scan:
    conditions are e(L_z) >= (C/2) n**(2-delta) and
    B_z <= (2K/C) n**(1+delta) e(L_z), with n = max class size.
    """
    if host.e == 0:
        raise NoQualifyingVertex("empty host")
    index = index or HostIndex(host)
    n = max(host.class_sizes)
    C = cfg.C
    best_diag = []
    for z in range(host.n_z):
        link = index.link(z)
        e_l = link.e
        if e_l == 0:
            continue
        # (1): e(L_z) >= (C/2) n**(2 - delta)
        if cmp_pow(Fraction(2 * e_l) / C, n, 2 - cfg.delta) < 0:
            best_diag.append((z, e_l, None))
            continue
        b_z = count_forbidden(link, K, index)
        # (2): B_z <= (2K/C) n**(1 + delta) e(L_z)
        if b_z > 0 and cmp_pow(Fraction(b_z) * C / (2 * K * e_l), n, 1 + cfg.delta) > 0:
            best_diag.append((z, e_l, b_z))
            continue
        q = min(Fraction(1), Fraction(2 * e_l) / (C * n * n))
        scale = EpsScale(n=n, q=q)
        return LinkChoice(
            z=z, link=link, forbidden_count=b_z, q=q,
            epsilon_realized=scale.eps_float(),
        )
    raise NoQualifyingVertex(
        f"no z in Z satisfies the density conditions (n={n}, C={C}, K={K}); "
        f"per-z diagnostics: {best_diag[:10]}"
    )


def average_link_edges(host: TripartiteHost) -> Fraction:
    """Average of e(L_z) over z in Z, exact.  Equals e(G)/n_Z."""
    if host.n_z == 0:
        raise ValueError("host has no Z vertices")
    index = HostIndex(host)
    total = sum(index.link(z).e for z in range(host.n_z))
    return Fraction(total, host.n_z)
