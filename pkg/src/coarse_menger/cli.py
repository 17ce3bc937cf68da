"""Command-line entry point.

Exit codes: ``solve`` returns 0 for far paths, 10 for a separator, 20 for a
subdivision witness and 1 on any error. ``oracle`` returns 0 when paths are
found, 10 when a separator is found, 3 when the searched object is absent.
``check-subdivision`` returns 20 when a witness exists and 0 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat

from .errors import CoarseMengerError
from .io import dumps_instance, parse_edge_list, read_instance, write_instance
from .solver import certificate_kind, certificate_to_json, constants, solve, verify_certificate
from .testbed import (FAMILY_KINDS, Instance, gen_family, gen_figure1, oracle_far_paths,
                      oracle_separator)
from .trees import contains_subdivision, pathwidth_exact

EXIT = {"far_paths": 0, "separator": 10, "witness": 20}
EXIT_ERROR = 1
EXIT_ABSENT = 3

# positional shape parameters per family
SHAPE = {
    "figure1": (),
    "binary_tree": ("depth",),
    "subdivided_tree": ("depth", "length"),
    "grid": ("rows", "cols"),
    "caterpillar": ("spine", "legs"),
    "random_bounded_pw": ("width", "n"),
}


def _error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def _params(inst: Instance, args) -> tuple[int, int, int]:
    vals = []
    for key in ("k", "c", "d"):
        v = getattr(args, key)
        if v is None:
            v = inst.params.get(key)
        if v is None:
            raise CoarseMengerError(f"{key} is neither given on the command line nor stored in the file")
        vals.append(int(v))
    return vals[0], vals[1], vals[2]


def cmd_gen(args) -> int:
    names = SHAPE[args.kind]
    if len(args.shape) != len(names):
        return _error(f"{args.kind} takes {len(names)} shape value(s): {' '.join(names) or 'none'}")
    if args.kind == "figure1":
        inst = gen_figure1()
    else:
        params = dict(zip(names, args.shape))
        for key in ("k", "c", "d"):
            if getattr(args, key) is not None:
                params[key] = getattr(args, key)
        if args.p is not None:
            params["p"] = args.p
        inst = gen_family(args.kind, params, args.seed)
    if args.out:
        write_instance(inst, args.out)
    else:
        sys.stdout.write(dumps_instance(inst))
    return 0


def _solve_one(path: str, k, c, d) -> dict:
    ns = argparse.Namespace(k=k, c=c, d=d)
    try:
        inst = read_instance(path)
        k, c, d = _params(inst, ns)
        table = constants(k, c, d)
        cert = solve(inst.graph, inst.s, inst.t, k, c, d)
        ok, reason = verify_certificate(inst.graph, inst.s, inst.t, k, c, d, table, cert)
        kind = certificate_kind(cert)
        return {
            "file": path, "k": k, "c": c, "d": d, "kind": kind,
            "certificate": certificate_to_json(cert), "constants": table.as_dict(),
            "verified": ok, "reason": reason, "exit": EXIT[kind] if ok else EXIT_ERROR,
        }
    except (CoarseMengerError, OSError) as exc:
        return {"file": path, "error": f"{type(exc).__name__}: {exc}", "exit": EXIT_ERROR}


def _print_report(rep: dict) -> None:
    print(f"{rep['file']}:")
    if "error" in rep:
        print(f"  error: {rep['error']}")
        return
    print(f"  k={rep['k']} c={rep['c']} d={rep['d']}")
    print(f"  certificate: {rep['kind']}")
    cert = rep["certificate"]
    if rep["kind"] == "far_paths":
        for i, part in enumerate(cert["parts"]):
            print(f"    part {i}: {' '.join(map(str, part))}")
    elif rep["kind"] == "separator":
        print(f"    X = {cert['x']}  radius = {cert['radius']}")
    else:
        print(f"    branch_map = {cert['branch_map']}")
        for i, p in enumerate(cert["edge_paths"], start=1):
            print(f"    edge {i}: {' '.join(map(str, p))}")
    print("  constants: " + " ".join(f"{k}={v}" for k, v in rep["constants"].items()))
    print(f"  verified: {'yes' if rep['verified'] else 'NO (' + rep['reason'] + ')'}")


def cmd_solve(args) -> int:
    if args.jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_solve_one, args.files, repeat(args.k), repeat(args.c), repeat(args.d)))
    else:
        reports = [_solve_one(f, args.k, args.c, args.d) for f in args.files]
    if args.emit_json:
        out = reports[0] if len(reports) == 1 else reports
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for rep in reports:
            _print_report(rep)
    for rep in reports:
        if "error" in rep:
            print(f"error: {rep['file']}: {rep['error']}", file=sys.stderr)
    codes = [rep["exit"] for rep in reports]
    return EXIT_ERROR if EXIT_ERROR in codes else max(codes)


def cmd_oracle(args) -> int:
    inst = read_instance(args.file)
    if args.mode == "paths":
        if args.m is None or args.c is None:
            return _error("paths mode needs --m and --c")
        found = oracle_far_paths(inst.graph, inst.s, inst.t, args.m, args.c, force=args.force)
        rep = {"mode": "paths", "m": args.m, "c": args.c, "found": found is not None,
               "paths": [list(p) for p in found] if found is not None else None}
        code = 0 if found is not None else EXIT_ABSENT
    else:
        if args.k is None or args.r is None:
            return _error("separator mode needs --k and --r")
        x = oracle_separator(inst.graph, inst.s, inst.t, args.k, args.r, force=args.force)
        rep = {"mode": "separator", "k": args.k, "r": args.r, "found": x is not None,
               "x": sorted(x) if x is not None else None}
        code = EXIT["separator"] if x is not None else EXIT_ABSENT
    if args.emit_json:
        print(json.dumps(rep, sort_keys=True, indent=2))
    elif not rep["found"]:
        print("absent")
    elif args.mode == "paths":
        print("found")
        for p in rep["paths"]:
            print("  " + " ".join(map(str, p)))
    else:
        print(f"found X = {rep['x']}")
    return code


def cmd_check_subdivision(args) -> int:
    inst = read_instance(args.file)
    w = contains_subdivision(inst.graph, args.d, args.l)
    if args.emit_json:
        print(json.dumps({"found": w is not None, "witness": w.to_json() if w else None},
                         sort_keys=True, indent=2))
    elif w is None:
        print("absent")
    else:
        print(f"found H_{w.depth} with edge paths of length <= {args.l}")
        print(f"  branch_map = {list(w.branch_map)}")
        for (p, c), path in w.tree_edges():
            print(f"  ({p},{c}): {' '.join(map(str, path))}")
    return EXIT["witness"] if w is not None else 0


def cmd_pathwidth(args) -> int:
    inst = read_instance(args.file)
    pw = pathwidth_exact(inst.graph)
    if args.emit_json:
        print(json.dumps({"n": inst.graph.n, "pathwidth": pw}, sort_keys=True))
    else:
        print(f"pathwidth = {pw}")
    return 0


def cmd_import_edgelist(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        g = parse_edge_list(fh.read())
    params = {key: getattr(args, key) for key in ("k", "c", "d") if getattr(args, key) is not None}
    inst = Instance(g, frozenset(args.S), frozenset(args.T), params, args.label or args.file)
    if args.out:
        write_instance(inst, args.out)
    else:
        sys.stdout.write(dumps_instance(inst))
    return 0


def _add_kcd(p: argparse.ArgumentParser, required: bool = False) -> None:
    for key in ("k", "c", "d"):
        p.add_argument(f"--{key}", type=int, default=None, required=required)


def parse_arguments(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="coarse-menger",
                                     description="Far-apart paths, small separators, or tree subdivisions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=("figure1",) + FAMILY_KINDS)
    p.add_argument("shape", type=int, nargs="*", help="shape values, e.g. 'grid 2 5'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=None, help="edge probability for random_bounded_pw")
    p.add_argument("-o", "--out")
    _add_kcd(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve one or more instance files")
    p.add_argument("files", nargs="+")
    _add_kcd(p)
    p.add_argument("--emit-json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="run a brute-force oracle")
    p.add_argument("file")
    p.add_argument("--mode", choices=("paths", "separator"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--force", action="store_true", help="ignore the size caps")
    p.add_argument("--emit-json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check-subdivision", help="search for an l-subdivision of H_d")
    p.add_argument("file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--emit-json", action="store_true")
    p.set_defaults(func=cmd_check_subdivision)

    p = sub.add_parser("pathwidth", help="exact path-width (small graphs)")
    p.add_argument("file")
    p.add_argument("--emit-json", action="store_true")
    p.set_defaults(func=cmd_pathwidth)

    p = sub.add_parser("import-edgelist", help="convert an 'n m' + 'u v' edge list to an instance file")
    p.add_argument("file")
    p.add_argument("--S", type=int, nargs="*", default=[])
    p.add_argument("--T", type=int, nargs="*", default=[])
    p.add_argument("--label")
    p.add_argument("-o", "--out")
    _add_kcd(p)
    p.set_defaults(func=cmd_import_edgelist)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_arguments(argv)
    try:
        return args.func(args)
    except (CoarseMengerError, OSError) as exc:
        return _error(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
