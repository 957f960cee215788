"""Command-line surface.

Verbs: find, verify, gen, sweep, inspect.  Exit codes: 0 on success or a
passing verification, 1 on a pipeline failure or failing verification
(stage tag on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .core import (
    Config,
    build_aux_graph,
    build_triple_subdivision,
    covered_pairs,
    euler_characteristic,
)
from .embed import find_homeomorph
from .errors import PipelineError
from .harness import SweepSpec, gen_random_host, run_sweep
from .io import (
    FormatError,
    load_certificate,
    load_host,
    load_target,
    write_certificate,
    write_host,
)
from .verify import verify_certificate


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homeofind")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_find = sub.add_parser("find", help="search a host for a homeomorph of a target")
    p_find.add_argument("--target", required=True, help="path or builtin:NAME")
    p_find.add_argument("--host", required=True)
    p_find.add_argument("--C", type=_rat, default=None, help="density constant (default: 2000 v(H)^6)")
    p_find.add_argument("--delta", type=_rat, default=Fraction(1, 5))
    p_find.add_argument("--eps", type=_rat, default=None)
    p_find.add_argument("--k", type=int, default=None, help="admissibility cutoff K (default: 3 v(H)^3)")
    p_find.add_argument("--seed", type=int, default=0)
    p_find.add_argument("--retries", type=int, default=64)
    p_find.add_argument("--out", required=True)

    p_ver = sub.add_parser("verify", help="check a certificate against a host")
    p_ver.add_argument("--cert", required=True)
    p_ver.add_argument("--host", required=True)

    p_gen = sub.add_parser("gen", help="generate a binomial random host")
    p_gen.add_argument("--nx", type=int, required=True)
    p_gen.add_argument("--ny", type=int, required=True)
    p_gen.add_argument("--nz", type=int, required=True)
    p_gen.add_argument("--p", type=_rat, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)

    p_sweep = sub.add_parser("sweep", help="run a density sweep from a JSON spec")
    p_sweep.add_argument("--spec", required=True)
    p_sweep.add_argument("--out-dir", required=True)

    p_ins = sub.add_parser("inspect", help="print target statistics")
    p_ins.add_argument("--target", required=True)

    return parser


def _cmd_find(args) -> int:
    target = load_target(args.target)
    host = load_host(args.host)
    cfg = Config(
        C=args.C if args.C is not None else Fraction(2000) * target.v ** 6,
        delta=args.delta,
        epsilon=args.eps if args.eps is not None else args.delta,
        k_threshold=args.k,
        rng_seed=args.seed,
        retry_limit=args.retries,
    )
    try:
        cert = find_homeomorph(host, target, cfg)
    except PipelineError as exc:
        print(f"not-found stage={exc.stage}: {exc}", file=sys.stderr)
        return 1
    with open(args.out, "w") as fh:
        fh.write(write_certificate(cert))
    print(f"found: {len(cert.host_faces)} host faces, certificate written to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    cert = load_certificate(args.cert)
    host = load_host(args.host)
    result = verify_certificate(cert, host)
    if result.passed:
        print("pass")
        return 0
    print(f"fail check={result.check}: {result.reason}", file=sys.stderr)
    return 1


def _cmd_gen(args) -> int:
    host = gen_random_host(args.nx, args.ny, args.nz, args.p, args.seed)
    with open(args.out, "w") as fh:
        fh.write(write_host(host))
    print(f"wrote host with {host.e} faces to {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    with open(args.spec) as fh:
        spec = SweepSpec.from_json(fh.read())
    rows = run_sweep(spec, out_dir=args.out_dir)
    for row in rows:
        print(row.serialize())
    return 0


def _cmd_inspect(args) -> int:
    h = load_target(args.target)
    pairs = covered_pairs(h)
    aux = build_aux_graph(h)
    sub = build_triple_subdivision(h)
    print(f"vertices: {h.vertex_count}")
    print(f"faces: {h.e}")
    print(f"covered pairs: {len(pairs)}")
    print(f"euler characteristic: {euler_characteristic(h)}")
    print(
        f"aux graph: |V1|={len(aux.v1)} |V2|={len(aux.v2)} "
        f"edges={len(aux.edges)} special-cycles={len(aux.special_cycles)}"
    )
    print(
        f"subdivision: vertices={sub.underlying.vertex_count} "
        f"faces={sub.underlying.e} chi={euler_characteristic(sub.underlying)}"
    )
    return 0


_COMMANDS = {
    "find": _cmd_find,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "sweep": _cmd_sweep,
    "inspect": _cmd_inspect,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except (FormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
