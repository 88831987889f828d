"""Command-line front end.

Results are JSON on stdout, human-readable notes on stderr.  Exit codes:
0 success, 1 mismatch/disagreement, 2 parse failure, 3 oracle scale
exceeded, 4 illegal move in a drawing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .dp import reconstruct_drawing, solve_bottomup, solve_topdown
from .oracle import (
    OracleProblem,
    OracleScaleError,
    optimal_height_bendfree,
    optimal_height_exact,
)
from .render import check_planar, render, to_svg, verify_rendering
from .sweep import IllegalMove, MoveSequence, SweepProblem, height_of
from .tree import (
    OrderedTree,
    TreeParseError,
    iter_trees,
    parse_tree,
    random_tree,
    serialize_tree,
)

EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_SCALE = 3
EXIT_ILLEGAL = 4


def _load_tree(arg: str) -> OrderedTree:
    if arg.lstrip().startswith("("):
        return parse_tree(arg)
    with open(arg) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                return parse_tree(line)
    raise TreeParseError("no tree found in file", 0)


def _solve_one(tree: OrderedTree, method: str, cap: int):
    t0 = time.perf_counter()
    if method == "dp":
        res = solve_bottomup(tree)
        drawing = reconstruct_drawing(tree, res.table, res.root_key)
        height = res.height
        extra = {"table_size": len(res.table.entries)}
    elif method == "dp-topdown":
        res = solve_topdown(tree)
        drawing = reconstruct_drawing(tree, res.table, res.root_key)
        height = res.height
        extra = {"table_size": len(res.table.entries)}
    elif method in ("oracle", "bendfree-oracle"):
        op = OracleProblem.whole_tree(tree, edge_cap=cap)
        if method == "oracle":
            height, drawing = optimal_height_exact(op)
        else:
            height, drawing = optimal_height_bendfree(op)
        extra = {}
    else:
        raise ValueError(f"unknown method {method!r}")
    extra["seconds"] = round(time.perf_counter() - t0, 6)
    return height, drawing, extra


def cmd_solve(args) -> int:
    try:
        tree = _load_tree(args.tree)
    except (TreeParseError, OSError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        height, drawing, extra = _solve_one(tree, args.method, args.cap)
    except OracleScaleError as err:
        print(err, file=sys.stderr)
        return EXIT_SCALE
    result = {
        "tree": serialize_tree(tree),
        "method": args.method,
        "height": height,
        "drawing": drawing.to_json(),
        "timings": extra,
    }
    if args.render or args.json_out:
        geom = render(SweepProblem(tree), drawing)
        if args.render:
            with open(args.render, "w") as fh:
                fh.write(to_svg(geom))
            print(f"wrote {args.render}", file=sys.stderr)
    if args.dump_table and args.method in ("dp", "dp-topdown"):
        res = solve_bottomup(tree) if args.method == "dp" else solve_topdown(tree)
        with open(args.dump_table, "w") as fh:
            for rec in res.table.dump():
                fh.write(json.dumps(rec) + "\n")
        print(f"wrote {args.dump_table}", file=sys.stderr)
    out = json.dumps(result, indent=None, sort_keys=True)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(out + "\n")
    print(out)
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.drawing) as fh:
            data = json.load(fh)
        tree = parse_tree(data["tree"])
        drawing = MoveSequence.from_json(
            data["drawing"] if "drawing" in data else data)
    except (TreeParseError, KeyError, ValueError, OSError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    problem = SweepProblem(tree)
    try:
        measured = height_of(problem, drawing)
    except IllegalMove as err:
        print(f"illegal drawing: {err}", file=sys.stderr)
        print(json.dumps({"ok": False, "error": str(err)}))
        return EXIT_ILLEGAL
    geom = render(problem, drawing)
    scanned = verify_rendering(geom)
    planar = check_planar(geom)
    claimed = data.get("height", measured)
    ok = planar and measured == scanned == claimed
    print(json.dumps({
        "ok": ok,
        "claimed": claimed,
        "replayed": measured,
        "scanned": scanned,
        "planar": planar,
    }, sort_keys=True))
    return 0 if ok else EXIT_MISMATCH


def cmd_enumerate(args) -> int:
    methods = args.methods.split(",")
    cap = args.cap
    total, disagreements = 0, []
    for tree in iter_trees(args.edges):
        total += 1
        results = {}
        for method in methods:
            try:
                h, drawing, _ = _solve_one(tree, method, cap)
            except OracleScaleError as err:
                print(err, file=sys.stderr)
                return EXIT_SCALE
            results[method] = h
            if method != "bendfree-oracle":
                hw = height_of(SweepProblem(tree), drawing)
                if hw != h:
                    disagreements.append(
                        {"tree": serialize_tree(tree), "witness": hw, "method": method})
        base = [results[m] for m in methods if m != "bendfree-oracle"]
        if base and len(set(base)) != 1:
            disagreements.append({"tree": serialize_tree(tree), **results})
    print(json.dumps({
        "edges": args.edges,
        "trees": total,
        "methods": methods,
        "disagreements": disagreements,
    }, sort_keys=True))
    if disagreements:
        print(f"{len(disagreements)} disagreements", file=sys.stderr)
        return EXIT_MISMATCH
    return 0


def cmd_bench(args) -> int:
    rows = []
    for n in args.sizes:
        tree = random_tree(n, args.seed)
        t0 = time.perf_counter()
        res = solve_bottomup(tree)
        dt = time.perf_counter() - t0
        rows.append({
            "edges": n,
            "height": res.height,
            "table_size": len(res.table.entries),
            "seconds": round(dt, 4),
        })
        print(f"n={n}: height={res.height} table={rows[-1]['table_size']} "
              f"{dt:.2f}s", file=sys.stderr)
    print(json.dumps({"seed": args.seed, "rows": rows}, sort_keys=True))
    return 0


def cmd_generate(args) -> int:
    for i in range(args.count):
        print(serialize_tree(random_tree(args.edges, args.seed + i)))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="planeheight",
        description="Exact minimum-height drawings of plane trees.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve one tree")
    sp.add_argument("tree", help="tree text '(...)' or a file with one tree per line")
    sp.add_argument("--method", default="dp",
                    choices=["dp", "dp-topdown", "oracle", "bendfree-oracle"])
    sp.add_argument("--cap", type=int, default=8, help="oracle edge cap")
    sp.add_argument("--render", metavar="PATH", help="write an SVG rendering")
    sp.add_argument("--json", dest="json_out", metavar="PATH")
    sp.add_argument("--dump-table", metavar="PATH",
                    help="write the DP table as JSON lines")
    sp.set_defaults(func=cmd_solve)

    vp = sub.add_parser("verify", help="replay, re-render and re-scan a drawing")
    vp.add_argument("drawing", help="JSON file with tree and drawing")
    vp.set_defaults(func=cmd_verify)

    ep = sub.add_parser("enumerate",
                        help="solve every rooted ordered tree of a size")
    ep.add_argument("--edges", type=int, required=True)
    ep.add_argument("--methods", default="dp,dp-topdown,oracle")
    ep.add_argument("--cap", type=int, default=8)
    ep.set_defaults(func=cmd_enumerate)

    bp = sub.add_parser("bench", help="time the solver on random trees")
    bp.add_argument("--sizes", type=int, nargs="+", required=True)
    bp.add_argument("--seed", type=int, default=0)
    bp.set_defaults(func=cmd_bench)

    gp = sub.add_parser("generate", help="print random trees")
    gp.add_argument("--edges", type=int, required=True)
    gp.add_argument("--count", type=int, default=1)
    gp.add_argument("--seed", type=int, default=0)
    gp.set_defaults(func=cmd_generate)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
