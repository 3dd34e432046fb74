"""Command-line front end.

Subcommands: tables (enumeration tables), kpu (convergence criterion),
bounds (stability and local-order estimates), validate (numerical
oracle suite).  Exit codes: 0 success, 1 check failure, 2 usage error,
3 parameters outside the proven regime.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from importlib import resources

from . import bounds as bd
from . import criterion as cr
from . import oracle as oc
from . import tables as tb
from .lattice import LatticeKind

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_REGIME = 3

_TABLE_IDS = {
    "loops": tb.TableId.LOOPS_THROUGH_EDGE,
    "n": tb.TableId.WALKS_TO_BOUNDARY_N,
    "r": tb.TableId.RIGHT_ENDPOINT_R,
    "q": tb.TableId.ODD_CORNER_Q,
    "s": tb.TableId.SUP_TABLE_S,
    "cn": tb.TableId.SQUARE_CN,
}

_GOLDEN_KEYS = {
    "loops": ("hexagonal", "loops_through_edge"),
    "n": ("hexagonal", "walks_to_boundary"),
    "r": ("hexagonal", "right_endpoint"),
    "q": ("hexagonal", "odd_corner"),
    "cn": ("square", "cn"),
}


def load_golden() -> dict:
    with resources.files("aklt.data").joinpath("golden.json").open() as fh:
        return json.load(fh)


def _lattice(name: str) -> LatticeKind:
    return LatticeKind.HEXAGONAL if name == "hex" else LatticeKind.SQUARE


def _emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(obj, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out)
        rows = obj.get("rows", obj)
        if isinstance(rows, list):
            rows = {r["index"]: r["value"] for r in rows}
        w.writerow(["index", "value"])
        for k in sorted(rows, key=lambda x: (isinstance(x, str), x)):
            w.writerow([k, rows[k]])
    else:
        for k, v in obj.items():
            print(f"{k}: {v}", file=out)


def _table_defaults(tid: str) -> int:
    return {"loops": 28, "n": 10, "r": 20, "q": 19, "s": 20, "cn": 7}[tid]


def cmd_tables(args) -> int:
    tid = args.id
    l_max = args.max if args.max is not None else _table_defaults(tid)
    kw = {"use_cache": not args.no_cache, "threads": args.threads}
    try:
        if tid == "loops":
            res = tb.loops_through_edge_table(l_max, **kw)
        elif tid == "n":
            res = tb.walks_to_boundary_table(l_max, **kw)
        elif tid == "r":
            res = tb.r_table(l_max, **kw)
        elif tid == "q":
            res = tb.q_table(l_max, **kw)
        elif tid == "s":
            res = tb.s_table((args.fixed[0], int(args.fixed[1:])),
                             l_max, **kw)
        else:
            res = tb.square_cn_table(l_max, **kw)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = res.to_json()
    _emit(payload, args.format, sys.stdout)
    if not args.check_reference:
        return EXIT_OK

    golden = load_golden()
    if tid == "s":
        block = golden["hexagonal"]["sup_table"]["classes"][args.fixed]
        want = {int(k): v for k, v in block["rows"].items()}
        want_loops = {int(k): v for k, v in block["loop_rows"].items()}
        cite = golden["hexagonal"]["sup_table"]["citation"]
        got_loops = res.loop_rows
    else:
        sec, key = _GOLDEN_KEYS[tid]
        block = golden[sec][key]
        want = {int(k): v for k, v in block["rows"].items()}
        want_loops, got_loops = {}, {}
        cite = block["citation"]
    bad = {k: (res.rows.get(k), v) for k, v in want.items()
           if k in res.rows and res.rows[k] != v}
    bad.update({k: (got_loops.get(k), v) for k, v in want_loops.items()
                if k in got_loops and got_loops[k] != v})
    if bad:
        print(f"reference check FAILED against {cite}:", file=sys.stderr)
        for k, (got, exp) in sorted(bad.items()):
            print(f"  index {k}: computed {got}, reference {exp}",
                  file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(f"reference check passed ({cite})", file=sys.stderr)
    return EXIT_OK


def cmd_kpu(args) -> int:
    lat = _lattice(args.lattice)
    try:
        if lat is LatticeKind.HEXAGONAL:
            rep = cr.verify_kpu_hex(args.m, args.K, args.N,
                                    use_cache=not args.no_cache,
                                    threads=args.threads)
        else:
            rep = cr.verify_kpu_square(args.m, args.K, args.N)
    except cr.RegimeError as exc:
        print(f"out of regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    _emit(rep.to_json(), args.format, sys.stdout)
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def cmd_bounds(args) -> int:
    lat = _lattice(args.lattice)
    results = {}
    try:
        if args.f or args.all:
            results["f"] = bd.f_bound(lat, args.m, args.N, args.K).to_json()
        if args.indist or args.all:
            results["indistinguishability"] = bd.indistinguishability_bound(
                lat, args.m, args.N, args.K, args.normA).to_json()
        if args.ltqo or args.all:
            results["ltqo"] = bd.ltqo_bound(
                lat, args.m, args.N, args.K, args.normA,
                recompute=args.recompute).to_json()
        if args.corr or args.all:
            results["correlation"] = bd.correlation_bound(
                lat, args.M, args.d, args.normA, args.normB).to_json()
        if args.constant or args.all:
            rec, quoted, agree = bd.recompute_ltqo_constant(lat)
            results["ltqo_constant"] = {
                "recomputed": rec, "quoted": quoted, "agree": agree}
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not results:
        print("error: choose at least one of --f/--indist/--ltqo/--corr/"
              "--constant/--all", file=sys.stderr)
        return EXIT_USAGE
    _emit(results, args.format, sys.stdout)
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = oc.McConfig(seed=args.seed, samples=args.samples,
                      threads=args.threads)
    checks: dict[str, bool] = {}
    details: dict[str, object] = {}

    est, err = oc.mc_edge_identity(oc.NORTH, oc.NORTH, cfg)
    checks["edge_identity_analytic"] = abs(est - 1 / 3) <= 4 * err
    details["edge_identity_analytic"] = {"estimate": est, "stderr": err,
                                         "exact": 1 / 3}
    four = (oc.NORTH,) * 4
    est4, err4 = oc.mc_degree4_identity(four, cfg)
    checks["degree4_identity_analytic"] = abs(est4 - 1 / 5) <= 4 * err4
    details["degree4_identity_analytic"] = {"estimate": est4, "stderr": err4,
                                            "exact": 1 / 5}

    small = oc.McConfig(seed=args.seed + 1,
                        samples=min(args.samples, 400_000),
                        threads=args.threads)
    hx = oc.brute_force_partition(oc.hexagon_edges(),
                                  LatticeKind.HEXAGONAL, small)
    checks["partition_hexagon"] = hx.within()
    details["partition_hexagon"] = hx.__dict__
    sq = oc.brute_force_partition(oc.unit_square_edges(),
                                  LatticeKind.SQUARE, small)
    checks["partition_unit_square"] = sq.within()
    details["partition_unit_square"] = sq.__dict__

    ports = {
        "loops": (tb.TableId.LOOPS_THROUGH_EDGE, 10),
        "r": (tb.TableId.RIGHT_ENDPOINT_R, 10),
        "q": (tb.TableId.ODD_CORNER_Q, 9),
        "cn": (tb.TableId.SQUARE_CN, 4),
    }
    for name, (tid, rng) in ports.items():
        diffs = oc.reference_port_compare(tid, rng)
        checks[f"port_{name}"] = not diffs
        if diffs:
            details[f"port_{name}"] = {str(k): v for k, v in diffs.items()}

    passed = all(checks.values())
    _emit({"passed": passed, "checks": checks, "details": details},
          args.format, sys.stdout)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"),
                        default="json")
    common.add_argument("--cache-dir", default=None,
                        help="table cache directory (default: AKLT_CACHE_DIR "
                             "or ~/.cache/aklt)")
    common.add_argument("--threads", type=int, default=1)

    p = argparse.ArgumentParser(
        prog="aklt",
        description="Polymer-expansion tables, convergence criterion, and "
                    "stability bounds for decorated AKLT models.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", parents=[common],
                       help="compute an enumeration table")
    t.add_argument("--id", choices=sorted(_TABLE_IDS), required=True)
    t.add_argument("--max", type=int, default=None,
                   help="largest polymer length (table default if omitted)")
    t.add_argument("--fixed", choices=[f"{k}{l}" for k, l in tb.S_CLASSES],
                   default="w3", help="fixed-polymer class for the s table")
    t.add_argument("--check-reference", action="store_true",
                   help="compare against the published reference values")
    t.add_argument("--no-cache", action="store_true")
    t.set_defaults(func=cmd_tables)

    k = sub.add_parser("kpu", parents=[common], help="verify the convergence criterion")
    k.add_argument("--lattice", choices=("hex", "square"), required=True)
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--K", type=int, default=None)
    k.add_argument("--N", type=int, default=None)
    k.add_argument("--no-cache", action="store_true")
    k.set_defaults(func=cmd_kpu)

    b = sub.add_parser("bounds", parents=[common], help="evaluate stability/local-order bounds")
    b.add_argument("--lattice", choices=("hex", "square"), required=True)
    b.add_argument("--m", type=int, default=0)
    b.add_argument("--K", type=int, default=25)
    b.add_argument("--N", type=int, default=100)
    b.add_argument("--M", type=float, default=50.0)
    b.add_argument("--d", type=float, default=50.0)
    b.add_argument("--normA", type=float, default=1.0)
    b.add_argument("--normB", type=float, default=1.0)
    b.add_argument("--f", action="store_true")
    b.add_argument("--indist", action="store_true")
    b.add_argument("--ltqo", action="store_true")
    b.add_argument("--corr", action="store_true")
    b.add_argument("--constant", action="store_true",
                   help="recompute the local-order constant")
    b.add_argument("--all", action="store_true")
    b.add_argument("--recompute", action="store_true",
                   help="use the recomputed constant in the ltqo bound")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("validate", parents=[common], help="run the numerical oracle suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=1_000_000)
    v.set_defaults(func=cmd_validate)
    return p


def _fill_kpu_defaults(args) -> None:
    if args.lattice == "hex":
        if args.K is None:
            args.K = 25
        if args.N is None:
            args.N = args.K + 53
    else:
        if args.K is None:
            args.K = 2
        if args.N is None:
            args.N = 10


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir is not None:
        os.environ[tb.CACHE_ENV] = args.cache_dir
    if args.command == "kpu":
        _fill_kpu_defaults(args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
