"""Command-line front end.

Exit codes: 0 success, 2 invalid input graph, 3 unreadable or unparsable
input, 4 internal consistency failure, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Sequence

from . import generators as gen
from .connectivity import ConnectivityResult, edge_connectivity, vertex_connectivity
from .errors import EGFParseError, InternalError, PreconditionError, ValidationError
from .graph import faces, parse_egf, read_egf, serialize_egf, validate
from .oracle import oracle_edge_connectivity, oracle_ribbon_radius, oracle_vertex_connectivity
from .ribbon import ribbon_radius

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_INTERNAL, EXIT_USAGE = 0, 2, 3, 4, 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _load(path: str, check_valid: bool = True):
    if path == "-":
        return parse_egf(sys.stdin.read(), check_valid=check_valid)
    return read_egf(path, check_valid=check_valid)


def _print_cut(res: ConnectivityResult, key: str, as_json: bool, out) -> None:
    if as_json:
        doc: dict = {key: res.value, "cut": list(res.cut), "mode": res.mode}
        if res.certificate is not None:
            c = res.certificate
            doc["certificate"] = {"A": sorted(c.A), "X": sorted(c.X), "B": sorted(c.B)}
        json.dump(doc, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"{key} {res.value}\n")
        out.write("cut" + "".join(f" {x}" for x in res.cut) + "\n")


def cmd_validate(args, out) -> int:
    g = _load(args.file, check_valid=False)
    rep = validate(g)
    if rep.ok:
        out.write(f"ok n={g.n_vertices} q={g.n_crossings} m={len(g.edges)}\n")
        return EXIT_OK
    for issue in rep.issues:
        out.write(f"invalid: {issue}\n")
    return EXIT_INVALID


def cmd_faces(args, out) -> int:
    g = _load(args.file)
    fs = faces(g)
    out.write(f"faces {len(fs)}\n")
    for i, walk in enumerate(fs.walks):
        out.write(f"face {i}:" + "".join(f" {g.tail(t)}" for t in walk) + "\n")
    return EXIT_OK


def cmd_ribbon(args, out) -> int:
    g = _load(args.file)
    res = ribbon_radius(g)
    out.write(f"mu {res.mu_g}\n")
    if args.per_crossing:
        for z in sorted(res.per_crossing):
            wit = " ".join(map(str, res.witness[z]))
            out.write(f"crossing {z} mu {res.per_crossing[z]} ribbon {wit}\n")
    return EXIT_OK


def cmd_connectivity(args, out) -> int:
    g = _load(args.file)
    fn = vertex_connectivity if args.kind == "vertex" else edge_connectivity
    res = fn(g, mu=args.mu, threads=args.threads, debug=args.debug,
             dump=args.debug_dump, td=args.td)
    _print_cut(res, "kappa" if args.kind == "vertex" else "lambda", args.json, out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    g = _load(args.file)
    if args.kind == "ribbon":
        reps = oracle_ribbon_radius(g, cap=args.cap)
        vals = [r.value for r in reps.values()]
        if any(r.inconclusive for r in reps.values()):
            out.write("mu inconclusive\n")
        else:
            out.write(f"mu {1 + max(vals, default=0)}\n")
        for z in sorted(reps):
            r = reps[z]
            if r.inconclusive:
                out.write(f"crossing {z} inconclusive\n")
            else:
                out.write(f"crossing {z} mu {r.value} ribbon {' '.join(map(str, r.witness or ()))}\n")
        return EXIT_OK
    rep = oracle_vertex_connectivity(g) if args.kind == "vertex" else oracle_edge_connectivity(g)
    key = "kappa" if args.kind == "vertex" else "lambda"
    out.write(f"{key} {rep.value}\n")
    out.write("cut" + "".join(f" {x}" for x in (rep.witness or ())) + "\n")
    return EXIT_OK


def _build(cls: str, params: Sequence[int]):
    need = {"grid": 2, "cycle": 1, "complete": 1, "clique-in-face": 2,
            "counterexample": 3}
    if cls not in need:
        raise _UsageError(f"unknown graph class {cls!r}")
    if len(params) != need[cls]:
        raise _UsageError(f"{cls} takes {need[cls]} integer parameters")
    try:
        if cls == "grid":
            return gen.gen_grid(*params)
        if cls == "cycle":
            return gen.gen_cycle(*params)
        if cls == "complete":
            return gen.gen_complete_planar(*params)
        if cls == "clique-in-face":
            return gen.gen_convex_clique_in_face(*params)
        return gen.gen_layered_counterexample(*params)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _ints(tokens: Sequence[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise _UsageError(f"expected integers, got {' '.join(tokens)}") from exc


def cmd_generate(args, out) -> int:
    cls, params = args.cls, list(args.params)
    if cls == "map":
        if not params or params[0] not in ("grid", "wheel"):
            raise _UsageError("map needs a witness: 'grid R C' or 'wheel D'")
        nums = _ints(params[1:])
        try:
            wit = gen.witness_grid(*nums) if params[0] == "grid" else gen.witness_wheel(*nums)
            g = gen.gen_map_from_witness(wit)
        except (TypeError, ValueError) as exc:
            raise _UsageError(str(exc)) from exc
    else:
        g = _build(cls, _ints(params))
    text = serialize_egf(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x]
    except ValueError as exc:
        raise _UsageError(f"bad --sizes {args.sizes!r}") from exc
    makers = {"grid": lambda k: gen.gen_grid(k, k), "cycle": gen.gen_cycle}
    if args.cls not in makers:
        raise _UsageError(f"bench supports {', '.join(sorted(makers))}")
    fn = vertex_connectivity if args.kind == "vertex" else edge_connectivity
    out.write("size vertices seconds value\n")
    for k in sizes:
        g = makers[args.cls](k)
        t0 = time.perf_counter()
        res = fn(g)
        dt = time.perf_counter() - t0
        out.write(f"{k} {g.n_vertices} {dt:.3f} {res.value}\n")
        out.flush()
    return EXIT_OK


def _parser() -> _Parser:
    p = _Parser(prog="nearplanar", description="Connectivity of graphs drawn with crossings.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("validate", help="check an EGF file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("faces", help="list the faces of G^x")
    s.add_argument("file")
    s.set_defaults(fn=cmd_faces)

    s = sub.add_parser("ribbon-radius", help="compute mu(G)")
    s.add_argument("file")
    s.add_argument("--per-crossing", action="store_true")
    s.set_defaults(fn=cmd_ribbon)

    s = sub.add_parser("connectivity", help="vertex or edge connectivity")
    s.add_argument("kind", choices=["vertex", "edge"])
    s.add_argument("file")
    s.add_argument("--mu", type=int, default=None, help="use this ribbon radius")
    s.add_argument("--json", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--td", choices=["heuristic", "radius"], default="heuristic",
                   help="tree decomposition used by the DP")
    s.add_argument("--debug", action="store_true", help="cross-check a supplied --mu")
    s.add_argument("--debug-dump", metavar="DIR", default=None,
                   help="write Lambda as DOT and slice decompositions as PACE .td")
    s.set_defaults(fn=cmd_connectivity)

    s = sub.add_parser("oracle", help="brute-force reference values")
    s.add_argument("kind", choices=["vertex", "edge", "ribbon"])
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=10 ** 6, help="ribbon search budget")
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("generate", help="write a generated instance as EGF")
    s.add_argument("cls", metavar="class",
                   help="grid R C | cycle N | complete N | clique-in-face M T | "
                        "map grid R C | map wheel D | counterexample K P R")
    s.add_argument("params", nargs="*")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(fn=cmd_generate)

    s = sub.add_parser("bench", help="wall time of the connectivity driver")
    s.add_argument("cls", metavar="class", help="grid (side lengths) or cycle")
    s.add_argument("--sizes", required=True)
    s.add_argument("--kind", choices=["vertex", "edge"], default="vertex")
    s.set_defaults(fn=cmd_bench)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "fn", None):
            raise _UsageError(parser.format_help())
        if args.verbose:
            logging.basicConfig(level=logging.DEBUG, stream=err)
        return args.fn(args, out)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except EGFParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"cannot read input: {exc}\n")
        return EXIT_PARSE
    except ValidationError as exc:
        for issue in exc.issues:
            err.write(f"invalid: {issue}\n")
        return EXIT_INVALID
    except PreconditionError as exc:
        err.write(f"invalid: {exc}\n")
        return EXIT_INVALID
    except InternalError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
