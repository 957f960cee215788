"""Flat-file formats: 3-graphs, tripartite hosts, certificates.

Every serializer writes in a fixed sorted order so that identical inputs
produce byte-identical files.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

from importlib import resources

from .core import ThreeGraph, TripartiteHost, build_aux_graph
from .embed import Embedding, HomeomorphCertificate


class FormatError(ValueError):
    pass


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_threegraph(text: str) -> ThreeGraph:
    header = None
    faces = []
    for lineno, tok in _content_lines(text):
        if tok[0] == "tg":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate tg header")
            header = int(tok[1])
        elif tok[0] == "f":
            if header is None:
                raise FormatError(f"line {lineno}: face before tg header")
            if len(tok) != 4:
                raise FormatError(f"line {lineno}: expected 'f a b c'")
            faces.append(tuple(int(t) for t in tok[1:]))
        else:
            raise FormatError(f"line {lineno}: unknown directive {tok[0]!r}")
    if header is None:
        raise FormatError("missing tg header")
    try:
        return ThreeGraph(header, frozenset(faces))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_threegraph(h: ThreeGraph) -> str:
    lines = [f"tg {h.vertex_count}"]
    lines += [f"f {a} {b} {c}" for a, b, c in h.sorted_faces()]
    return "\n".join(lines) + "\n"


def parse_host(text: str) -> TripartiteHost:
    sizes = None
    faces = []
    for lineno, tok in _content_lines(text):
        if tok[0] == "tph":
            if sizes is not None:
                raise FormatError(f"line {lineno}: duplicate tph header")
            if len(tok) != 4:
                raise FormatError(f"line {lineno}: expected 'tph nx ny nz'")
            sizes = tuple(int(t) for t in tok[1:])
        elif tok[0] == "f":
            if sizes is None:
                raise FormatError(f"line {lineno}: face before tph header")
            if len(tok) != 4:
                raise FormatError(f"line {lineno}: expected 'f x y z'")
            faces.append(tuple(int(t) for t in tok[1:]))
        else:
            raise FormatError(f"line {lineno}: unknown directive {tok[0]!r}")
    if sizes is None:
        raise FormatError("missing tph header")
    try:
        return TripartiteHost(sizes, frozenset(faces))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_host(host: TripartiteHost) -> str:
    lines = [f"tph {host.n_x} {host.n_y} {host.n_z}"]
    lines += [f"f {x} {y} {z}" for x, y, z in host.sorted_faces()]
    return "\n".join(lines) + "\n"


_BUILTINS = {
    "triangle": lambda: ThreeGraph(3, frozenset({(0, 1, 2)})),
    "k4": lambda: ThreeGraph(4, frozenset({(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)})),
}


def load_target(spec: str) -> ThreeGraph:
    """Load a target from ``builtin:NAME`` or a file path."""
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):]
        if name in _BUILTINS:
            return _BUILTINS[name]()
        if name == "torus7":
            text = resources.files("homeofind.data").joinpath("torus7.tg").read_text()
            return parse_threegraph(text)
        raise FormatError(f"unknown builtin target {name!r}")
    with open(spec) as fh:
        return parse_threegraph(fh.read())


def load_host(path: str) -> TripartiteHost:
    with open(path) as fh:
        return parse_host(fh.read())


def write_certificate(cert: HomeomorphCertificate) -> str:
    """Serialize a certificate.

    Format: ``cert v1`` header, the target as a tg block, one ``v1`` line
    per target vertex appearing in no special cycle (isolated vertices,
    whose placement the disk lines cannot reconstruct), then per special
    cycle a ``disk`` line with the host-local images (a u b w center)
    followed by its four ``hf`` host faces.
    """
    aux = build_aux_graph(cert.target)
    emb = cert.embedding
    lines = ["cert v1", f"tg {cert.target.vertex_count}"]
    lines += [f"f {a} {b} {c}" for a, b, c in cert.target.sorted_faces()]

    in_cycle = set()
    for sc in aux.special_cycles:
        in_cycle.update((sc.a, sc.b))
    for v in sorted(set(emb.v1_map) - in_cycle):
        lines.append(f"v1 {v} {emb.v1_map[v]}")

    for ci, sc in enumerate(aux.special_cycles):
        a, b = emb.v1_map[sc.a], emb.v1_map[sc.b]
        u, w = emb.v2_map[sc.u], emb.v2_map[sc.w]
        lines.append(f"disk {ci} {a} {u} {b} {w} {emb.center_map[ci]}")
        for f in cert.host_faces[4 * ci:4 * ci + 4]:
            lines.append(f"hf {f[0]} {f[1]} {f[2]}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> HomeomorphCertificate:
    tg_lines = []
    v1_lines = []
    disk_blocks = []
    current = None
    for lineno, tok in _content_lines(text):
        if tok[0] == "cert":
            if tok[1:] != ["v1"]:
                raise FormatError(f"line {lineno}: unsupported certificate version")
        elif tok[0] in ("tg", "f"):
            tg_lines.append(" ".join(tok))
        elif tok[0] == "v1":
            v1_lines.append((int(tok[1]), int(tok[2])))
        elif tok[0] == "disk":
            if len(tok) != 7:
                raise FormatError(f"line {lineno}: expected 'disk ci a u b w center'")
            current = {"head": tuple(int(t) for t in tok[1:]), "faces": []}
            disk_blocks.append(current)
        elif tok[0] == "hf":
            if current is None:
                raise FormatError(f"line {lineno}: hf before any disk line")
            current["faces"].append(tuple(int(t) for t in tok[1:]))
        else:
            raise FormatError(f"line {lineno}: unknown directive {tok[0]!r}")

    target = parse_threegraph("\n".join(tg_lines))
    aux = build_aux_graph(target)
    if len(disk_blocks) != len(aux.special_cycles):
        raise FormatError(
            f"certificate has {len(disk_blocks)} disk blocks, target requires "
            f"{len(aux.special_cycles)}"
        )

    v1_map: dict[int, int] = {}
    v2_map: dict[int, int] = {}
    center_map: dict[int, int] = {}

    def put(mapping, key, val, what):
        if key in mapping and mapping[key] != val:
            raise FormatError(f"inconsistent {what} for {key}: {mapping[key]} vs {val}")
        mapping[key] = val

    faces = []
    provenance = {}
    seen = set()
    for block in disk_blocks:
        ci, a, u, b, w, center = block["head"]
        if not 0 <= ci < len(aux.special_cycles) or ci in seen:
            raise FormatError(f"bad or duplicate cycle index {ci}")
        seen.add(ci)
        if len(block["faces"]) != 4 or any(len(f) != 3 for f in block["faces"]):
            raise FormatError(f"disk {ci} must carry exactly four 'hf x y z' faces")
        sc = aux.special_cycles[ci]
        put(v1_map, sc.a, a, "v1 image")
        put(v1_map, sc.b, b, "v1 image")
        put(v2_map, sc.u, u, "v2 image")
        put(v2_map, sc.w, w, "v2 image")
        put(center_map, ci, center, "center")
    for block in sorted(disk_blocks, key=lambda bl: bl["head"][0]):
        ci = block["head"][0]
        sc = aux.special_cycles[ci]
        for role, f in enumerate(block["faces"]):
            faces.append(f)
            provenance[f] = (sc.face, ci, role)
    for v, y in v1_lines:
        put(v1_map, v, y, "v1 image")

    emb = Embedding(v1_map=v1_map, v2_map=v2_map, center_map=center_map)
    return HomeomorphCertificate(
        target=target,
        host_faces=tuple(faces),
        provenance=provenance,
        embedding=emb,
    )


def load_certificate(path: str) -> HomeomorphCertificate:
    with open(path) as fh:
        return parse_certificate(fh.read())
