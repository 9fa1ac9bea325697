"""Command-line entry point: ``avoidkit <command> ...``.

Every command except ``table`` prints ``{"manifest": ..., "result": ...}`` as
JSON. Exit status: 0 computed, 2 invalid input, 3 search limit hit (unknown).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
import time

from . import __version__
from .asymmetry import goodman_floor, k_of_h, random_asymmetry_experiment
from .families import GraphFamily, all_graphs
from .graphs import Graph, canonical_form, complement, from_graph6, to_graph6
from .packing import (
    FOUND,
    UNKNOWN,
    Coloring,
    exact_decomposition,
    nu_star,
    perfect_size,
    verify_packing,
)
from .serialize import digest, frac_str, parse_frac, parse_int_set, set_str
from .tsuff import EXACT, GRID, MAX_TABLE_K, MIN_K, build_system, exact_region, grid_sweep, maximal_sets
from .witnesses import (
    C4,
    KINDS,
    STAR,
    WitnessSpec,
    build_witness,
    c4_budget_check,
    lp_deficit_report,
    star_budget_check,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNKNOWN = 3
THREADS_ENV = "AVOIDKIT_THREADS"

log = logging.getLogger("avoidkit")


class InputError(ValueError):
    pass


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parse_graph(text: str) -> Graph:
    """Named graph (K4, C5, P4, E3, K1,3, K4-) or a graph6 string."""
    t = text.strip()
    m = re.fullmatch(r"K1,(\d+)", t)
    if m:
        return Graph.star(int(m.group(1)))
    m = re.fullmatch(r"K(\d+)-", t)
    if m:
        n = int(m.group(1))
        return Graph.from_edges(n, [e for e in Graph.complete(n).edges() if e != (0, 1)])
    m = re.fullmatch(r"([KCPE])(\d+)", t)
    if m:
        n = int(m.group(2))
        return {"K": Graph.complete, "C": Graph.cycle, "P": Graph.path, "E": Graph.empty}[m.group(1)](n)
    return from_graph6(t)


def read_coloring(path: str) -> Coloring:
    try:
        with open(path) as fh:
            return Coloring.from_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read coloring file: {exc}") from None


def build_allowed(k: int, allow: str, forbid_blue, forbid_red) -> GraphFamily:
    if allow != "all":
        raise InputError("--allow currently accepts only 'all'")
    forms = set(all_graphs(k).forms)
    for spec in forbid_blue or []:
        g = parse_graph(spec)
        if g.n != k:
            raise InputError(f"forbidden graph {spec} has {g.n} vertices, expected {k}")
        forms.discard(canonical_form(g))
    for spec in forbid_red or []:
        g = parse_graph(spec)
        if g.n != k:
            raise InputError(f"forbidden graph {spec} has {g.n} vertices, expected {k}")
        forms.discard(canonical_form(complement(g)))
    return GraphFamily(k, frozenset(forms), "allowed")


def forbidden_family(k: int, forbid_blue, forbid_red) -> GraphFamily:
    allowed = build_allowed(k, "all", forbid_blue, forbid_red)
    return GraphFamily(k, all_graphs(k).forms - allowed.forms, "forbidden")


# -- commands ------------------------------------------------------------------

def cmd_tsuff(args):
    S = parse_int_set(args.set)
    system = build_system(args.k, S)
    if args.mode == EXACT:
        report = exact_region(system)
    else:
        report = grid_sweep(system, args.grid_denominator)
    result = report.to_json(include_points=not args.failures_only)
    return result, EXIT_OK


def table_rows(kmin: int, kmax: int, mode: str, D: int, threads: int) -> list[tuple[int, str]]:
    if not MIN_K <= kmin <= kmax <= MAX_TABLE_K:
        raise InputError(f"need {MIN_K} <= kmin <= kmax <= {MAX_TABLE_K}")
    rows = []
    for k in range(kmin, kmax + 1):
        sets = maximal_sets(k, mode, D, workers=threads)
        rows.append((k, " ".join(set_str(s) for s in sets)))
    return rows


def cmd_table(args):
    rows = table_rows(args.kmin, args.kmax, args.mode, args.grid_denominator, args.threads)
    result = {"mode": args.mode, "rows": [{"k": k, "maximal_sets": s} for k, s in rows]}
    if args.mode == GRID:
        result["grid_denominator"] = args.grid_denominator
    return result, EXIT_OK


def cmd_kofh(args):
    H = parse_graph(args.graph)
    r = k_of_h(H)
    result = {"graph6": to_graph6(H), "h": H.n, **r.to_json()}
    if H.n >= 2:
        result["goodman_floor"] = goodman_floor(H.n)
    return result, EXIT_OK


def cmd_nustar(args):
    coloring = read_coloring(args.coloring)
    family = build_allowed(args.k, args.allow, args.forbid_blue, args.forbid_red)
    r = nu_star(coloring, family)
    result = {
        "n": coloring.n,
        "k": args.k,
        "nu_star": frac_str(r.value),
        "perfect_bound": frac_str(perfect_size(coloring.n, args.k)),
        "variables": r.variables,
        "packing": r.packing.to_json(),
    }
    return result, EXIT_OK


def cmd_decompose(args):
    coloring = read_coloring(args.coloring)
    family = build_allowed(args.k, args.allow, args.forbid_blue, args.forbid_red)
    r = exact_decomposition(coloring, args.k, family, node_limit=args.node_limit, time_limit=args.time_limit)
    result = {"n": coloring.n, "k": args.k, **r.to_json()}
    if r.status == FOUND:
        check = verify_packing(coloring, r.packing, full_coverage=True)
        result["verified"] = check.ok
        result["diagnostics"] = check.diagnostics
    return result, EXIT_UNKNOWN if r.status == UNKNOWN else EXIT_OK


def cmd_witness(args):
    sizes = tuple(int(s) for s in args.sizes.split(",")) if args.sizes else None
    alpha = parse_frac(args.alpha) if args.alpha else None
    spec = WitnessSpec(args.kind, args.n, sizes, alpha)
    coloring = build_witness(spec)
    result = {
        "kind": args.kind,
        "n": args.n,
        "sizes": list(spec.resolved_sizes()),
        "blue_edges": coloring.blue.num_edges,
        "red_edges": args.n * (args.n - 1) // 2 - coloring.blue.num_edges,
    }
    if args.kind == C4 and args.n % 12 in (1, 4):
        result["c4_budget"] = c4_budget_check(args.n).to_json()
    if args.kind == STAR and alpha is not None and args.k is not None:
        result["star_budget"] = star_budget_check(args.k, alpha, args.n).to_json()
    if args.deficit:
        if args.k is None:
            raise InputError("--deficit needs --k")
        forbidden = forbidden_family(args.k, args.forbid_blue, args.forbid_red)
        result["lp_deficit"] = lp_deficit_report(coloring, forbidden, args.k).to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(coloring.to_text())
        result["coloring_file"] = args.output
    else:
        result["coloring"] = coloring.to_text()
    return result, EXIT_OK


def cmd_experiment(args):
    r = random_asymmetry_experiment(args.h, parse_frac(args.p), parse_frac(args.beta), args.trials, args.seed,
                                    workers=args.threads)
    return r.to_json(), EXIT_OK


# -- parser -------------------------------------------------------------------------

def _family_flags(p):
    p.add_argument("--k", type=int, required=True, help="block size")
    p.add_argument("--allow", default="all", help="base family (only 'all' = every coloring of K_k)")
    p.add_argument("--forbid-blue", action="append", metavar="GRAPH",
                   help="remove the class whose blue graph is GRAPH (name like C4, K1,3, K4- or graph6)")
    p.add_argument("--forbid-red", action="append", metavar="GRAPH",
                   help="remove the class whose red graph is GRAPH")


def _common_flags(p, suppress: bool) -> None:
    # on subcommands the defaults are suppressed so a value given before the subcommand survives
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--threads", type=int, default=d(default_threads()),
                   help=f"worker processes (default from ${THREADS_ENV}, else 1)")
    p.add_argument("--verbose", "-v", action="store_true", default=d(False))
    p.add_argument("--compact", action="store_true", default=d(False), help="single-line JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="avoidkit", description="Exact tools for avoidable colorings and packings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("tsuff", help="feasibility of the parametric system for one degree set")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set", required=True, help="degree set S, e.g. 2,4")
    p.add_argument("--mode", choices=(GRID, EXACT), default=GRID)
    p.add_argument("--grid-denominator", type=int, default=1000)
    p.add_argument("--failures-only", action="store_true", help="list only infeasible grid points")
    p.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    p.set_defaults(func=cmd_tsuff)

    p = add("table", help="maximal degree sets for a range of k (CSV)")
    p.add_argument("--kmin", type=int, default=5)
    p.add_argument("--kmax", type=int, default=11)
    p.add_argument("--mode", choices=(GRID, EXACT), default=GRID)
    p.add_argument("--grid-denominator", type=int, default=1000)
    p.add_argument("--csv", action="store_true", help="CSV output (the default)")
    p.add_argument("--json", action="store_true", help="JSON with manifest instead of CSV")
    p.set_defaults(func=cmd_table)

    p = add("kofh", help="asymmetry parameter k(H)")
    p.add_argument("--graph", required=True, help="graph6 string or name")
    p.set_defaults(func=cmd_kofh)

    p = add("nustar", help="fractional packing number")
    p.add_argument("--coloring", required=True, help="coloring file (n=<int> then blue edges 'u v')")
    _family_flags(p)
    p.set_defaults(func=cmd_nustar)

    p = add("decompose", help="exact decomposition search")
    p.add_argument("--coloring", required=True)
    _family_flags(p)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--time-limit", type=float, help="seconds")
    p.set_defaults(func=cmd_decompose)

    p = add("witness", help="build a witness coloring and its counting checks")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--alpha", help="star witness fraction |A|/n, e.g. 1/4")
    p.add_argument("--k", type=int)
    p.add_argument("--deficit", action="store_true", help="also solve the LP deficit for the forbidden classes")
    p.add_argument("--forbid-blue", action="append", metavar="GRAPH")
    p.add_argument("--forbid-red", action="append", metavar="GRAPH")
    p.add_argument("--output", "-o", help="write the coloring file here")
    p.set_defaults(func=cmd_witness)

    p = add("experiment", help="random-graph asymmetry frequency")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--p", default="1/2")
    p.add_argument("--beta", default="1")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_experiment)
    return parser


def _parameters(args) -> dict:
    skip = {"func", "command", "verbose", "compact", "json", "csv"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.threads < 1:
        parser.error("--threads must be positive")
    start = time.perf_counter()
    try:
        result, code = args.func(args)
    except ValueError as exc:
        print(f"avoidkit {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    elapsed = time.perf_counter() - start

    if args.command == "table" and not args.json:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "maximal_sets"])
        for row in result["rows"]:
            w.writerow([row["k"], row["maximal_sets"]])
        sys.stdout.write(buf.getvalue())
        return code

    manifest = {
        "command": args.command,
        "parameters": _parameters(args),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "wall_time_s": round(elapsed, 6),
        "result_digest": digest(result),
    }
    out = {"manifest": manifest, "result": result}
    print(json.dumps(out, sort_keys=True, indent=None if args.compact else 2))
    return code


if __name__ == "__main__":
    sys.exit(main())
