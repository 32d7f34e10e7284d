"""Command-line interface: count, analyze, verify, gen, bench, obstructions."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .counting import HomMemo, NonIntegralCount, count_ind, count_sub, ind_expansion, sub_expansion
from .counting import Expansion
from .decomposition import MAX_DTW_SOURCES, dtw_bruteforce
from .elimination import check_dtd, validate_forest
from .families import connected_graphs_upto, named_graph, random_degenerate
from .graph import (EdgeListError, Graph, GraphTooLarge, canonical_form, degeneracy_order,
                    format_edge_list, parse_edge_list)
from .homcount import HomStats, count_hom_dag, count_hom_report, oriented_host, pattern_plans
from .minors import MAX_MINOR_HOST, contained_obstructions
from .oracle import OracleGuardExceeded, brute_hom, brute_ind, brute_sub

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
DEFAULT_SEED = 0x5EED_DE6E_C0DE_2024


class UsageError(Exception):
    pass


def load_graph(source: str) -> Graph:
    """A named graph (``C6``, ``K3,4``...) or an edge-list file."""
    g = named_graph(source)
    if g is not None:
        return g
    if not os.path.exists(source):
        raise UsageError(f"{source}: no such file and not a graph name")
    with open(source, encoding="utf-8") as fh:
        try:
            return parse_edge_list(fh.read())[0]
        except EdgeListError as exc:
            raise EdgeListError(f"{source}: {exc}") from None


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# --------------------------------------------------------------------------
# count
# --------------------------------------------------------------------------

def cmd_count(args) -> int:
    h = load_graph(args.pattern)
    g = load_graph(args.host)
    start = time.perf_counter()
    memo = HomMemo(g, workers=args.threads)
    if args.mode == "hom":
        exp = Expansion(((canonical_form(h), 1),))
        count = memo(h)
    elif args.mode == "sub":
        exp = sub_expansion(h)
        count = count_sub(h, g, memo)
    else:
        exp = ind_expansion(h)
        count = count_ind(h, g, memo)
    elapsed = time.perf_counter() - start
    if args.emit_expansion:
        text = exp.format()
        if args.emit_expansion == "-":
            sys.stderr.write(text)
        else:
            with open(args.emit_expansion, "w", encoding="utf-8") as fh:
                fh.write(text)
    reports = list(memo.reports.values())
    host_d = degeneracy_order(g).d
    own = count_hom_report(h, g) if args.mode == "hom" else None
    report = {
        "mode": args.mode,
        "count": str(count),
        "degeneracy": host_d,
        "orientations": sum(r.orientations for r in reports),
        "dtd": own.dtds if own else [d for r in reports for d in r.dtds],
        "elapsed": round(elapsed, 6),
        "peak_aux_bytes": max((r.peak_aux_bytes for r in reports), default=0),
        "expansion_terms": len(exp.terms),
    }
    status = EXIT_OK
    if args.oracle:
        fn = {"hom": brute_hom, "sub": brute_sub, "ind": brute_ind}[args.mode]
        try:
            truth = fn(h, g)
            report["oracle"] = str(truth)
            report["oracle_agrees"] = truth == count
            if truth != count:
                status = EXIT_FAIL
        except OracleGuardExceeded as exc:
            report["oracle"] = None
            report["oracle_skipped"] = str(exc)
    text = str(count)
    if args.oracle and "oracle_agrees" in report:
        text += f"\noracle: {report['oracle']} ({'agrees' if report['oracle_agrees'] else 'MISMATCH'})"
    _emit(report, args.json, text)
    return status


# --------------------------------------------------------------------------
# analyze
# --------------------------------------------------------------------------

def analyze_pattern(h: Graph) -> dict:
    k, ell = h.n, h.m
    per = []
    for dag, forest, depth in pattern_plans(h):
        row = {"arcs": [list(a) for a in dag.arcs()], "sources": sorted(dag.sources), "dtd": depth,
               "forest": forest.to_json()}
        if len(dag.sources) <= MAX_DTW_SOURCES:
            w, dec = dtw_bruteforce(dag)
            row["dtw"] = w
            row["decomposition"] = dec.to_json()
        per.append(row)
    dtd_g = max((r["dtd"] for r in per), default=0)
    dtws = [r["dtw"] for r in per if "dtw" in r]
    dtw_g = max(dtws) if dtws and len(dtws) == len(per) else None
    out = {
        "vertices": k,
        "edges": ell,
        "orientations": len(per),
        "dtd_graph": dtd_g,
        "dtw_graph": dtw_g,
        "bounds": {
            "dtd_vertex_bound": k // 4 + 2,
            "dtd_vertex_slack": k // 4 + 2 - dtd_g,
            "dtd_edge_bound": ell // 5 + 3,
            "dtd_edge_slack": ell // 5 + 3 - dtd_g,
            "dtw_vertex_bound": k // 5 + 3,
            "dtw_vertex_slack": None if dtw_g is None else k // 5 + 3 - dtw_g,
        },
        "per_orientation": per,
    }
    if k <= MAX_MINOR_HOST:
        found = contained_obstructions(h)
        out["dtd_le2_obstructions"] = found
        out["dtd_le2_by_obstructions"] = not found
    return out


def cmd_analyze(args) -> int:
    h = load_graph(args.pattern)
    rep = analyze_pattern(h)
    lines = [f"pattern: {rep['vertices']} vertices, {rep['edges']} edges, {rep['orientations']} acyclic orientations",
             f"dtd_graph = {rep['dtd_graph']}",
             f"dtw_graph = {rep['dtw_graph'] if rep['dtw_graph'] is not None else 'n/a (too many sources)'}"]
    b = rep["bounds"]
    lines.append(f"bounds: dtd <= {b['dtd_vertex_bound']} (slack {b['dtd_vertex_slack']}), "
                 f"dtd <= {b['dtd_edge_bound']} (slack {b['dtd_edge_slack']}), "
                 f"dtw <= {b['dtw_vertex_bound']} (slack {b['dtw_vertex_slack']})")
    if "dtd_le2_obstructions" in rep:
        found = rep["dtd_le2_obstructions"]
        lines.append("dtd<=2 obstruction verdict: " + (f"contains {', '.join(found)}" if found else "obstruction-free"))
    shown = rep["per_orientation"] if args.all or len(rep["per_orientation"]) <= 16 else \
        sorted(rep["per_orientation"], key=lambda r: -r["dtd"])[:4]
    if len(shown) < len(rep["per_orientation"]):
        lines.append(f"(showing {len(shown)} deepest orientations; --all lists every one)")
    for r in shown:
        arcs = " ".join(f"{u}>{v}" for u, v in r["arcs"])
        lines.append(f"  [{arcs}] dtd {r['dtd']}" + (f", dtw {r['dtw']}" if "dtw" in r else "")
                     + f", forest {_forest_text(r['forest'])}")
    _emit(rep, args.json, "\n".join(lines))
    return EXIT_OK


def _forest_text(nodes) -> str:
    def one(n):
        kids = n["children"]
        return str(n["vertex"]) + ("(" + " ".join(one(c) for c in kids) + ")" if kids else "")

    return " ".join(one(n) for n in nodes) or "-"


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def run_verify(max_pattern: int, hosts: int, seed: int, mutate: bool = False) -> tuple[int, list[str]]:
    """Oracle equivalence for hom/sub/ind plus the dtd bound suite."""
    failures: list[str] = []
    checks = 0
    rng = random.Random(seed)
    patterns = connected_graphs_upto(max_pattern) if max_pattern >= 1 else []
    for i in range(hosts):
        n = rng.randint(5, 14)
        d = rng.randint(1, 3)
        host_seed = rng.getrandbits(64)
        g = random_degenerate(n, d, host_seed)
        memo = HomMemo(g)
        hom = (lambda p, memo=memo: memo(p) + 1) if mutate else memo
        for p in patterns:
            want = {"hom": brute_hom(p, g), "sub": brute_sub(p, g), "ind": brute_ind(p, g)}
            for mode, fn in (("hom", hom), ("sub", lambda q: count_sub(q, g, hom)),
                             ("ind", lambda q: count_ind(q, g, hom))):
                checks += 1
                try:
                    got = fn(p)
                except NonIntegralCount as exc:
                    got = f"error ({exc})"
                if got != want[mode]:
                    failures.append(f"{mode}: pattern {p.edges()} on {p.n} vertices, host n={n} d={d} "
                                    f"seed={host_seed}: got {got}, oracle {want[mode]}")
    for p in patterns:
        for dag, forest, depth in pattern_plans(p):
            checks += 1
            wit = check_dtd(dag, depth)
            problems = []
            if depth > p.n // 4 + 2:
                problems.append(f"dtd {depth} > floor(k/4)+2")
            if depth > p.m // 5 + 3:
                problems.append(f"dtd {depth} > floor(l/5)+3")
            if wit is None or not validate_forest(dag, wit) or not validate_forest(dag, forest):
                problems.append("witness forest rejected")
            if depth > 0 and check_dtd(dag, depth - 1) is not None:
                problems.append("dtd not minimal")
            if problems:
                failures.append(f"bounds: pattern {p.edges()} orientation {dag.arcs()}: {'; '.join(problems)}")
    return checks, failures


def cmd_verify(args) -> int:
    checks, failures = run_verify(args.max_pattern, args.hosts, args.seed, args.inject_mutation)
    if checks == 0:
        print("warning: 0 checks (empty corpus)", file=sys.stderr)
    report = {"checks": checks, "failures": failures, "seed": args.seed, "passed": not failures}
    text = "\n".join([f"FAIL {f}" for f in failures] +
                     [f"{checks} checks, {len(failures)} failures (seed {args.seed})"])
    _emit(report, args.json, text)
    return EXIT_FAIL if failures else EXIT_OK


# --------------------------------------------------------------------------
# gen
# --------------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n < 1 or args.d < 0:
        raise UsageError("gen needs n >= 1 and d >= 0")
    g = random_degenerate(args.n, args.d, args.seed)
    header = [f"degencount gen n={args.n} d={args.d} seed={args.seed}",
              f"degeneracy {degeneracy_order(g).d}"]
    sys.stdout.write(format_edge_list(g, header))
    return EXIT_OK


# --------------------------------------------------------------------------
# bench
# --------------------------------------------------------------------------

def bench(h: Graph, sizes: list[int], d: int, seed: int, orientation: str = "all", repeat: int = 1) -> dict:
    """Time hom counting per host size; each size keeps the best of ``repeat`` runs."""
    import numpy as np

    rows = []
    worst = max(pattern_plans(h), key=lambda t: t[2]) if h.n else None
    for n in sizes:
        g = random_degenerate(n, d, seed)
        host_dag, host_d = oriented_host(g)
        best = float("inf")
        for _ in range(max(1, repeat)):
            start = time.perf_counter()
            if orientation == "worst" and worst is not None:
                stats = HomStats()
                count = count_hom_dag(host_dag, worst[0], worst[1], stats)
                peak, depth = stats.peak_aux_bytes, stats.max_depth
            else:
                rep = count_hom_report(h, g)
                count, peak, depth = rep.count, rep.peak_aux_bytes, rep.max_depth
            best = min(best, time.perf_counter() - start)
        rows.append({"n": n, "seconds": best, "count": str(count),
                     "peak_aux_bytes": peak, "max_depth": depth, "degeneracy": host_d})
    slope = None
    if len(rows) >= 2:
        xs = np.log([r["n"] for r in rows])
        ys = np.log([max(r["seconds"], 1e-9) for r in rows])
        slope = float(np.polyfit(xs, ys, 1)[0])
    return {"rows": rows, "slope": slope, "orientation": orientation,
            "aux_constant": len({r["peak_aux_bytes"] for r in rows}) <= 1,
            "dtd": worst[2] if worst else 0}


def cmd_bench(args) -> int:
    h = load_graph(args.pattern)
    rep = bench(h, args.n, args.d, args.seed, args.orientation, args.repeat)
    lines = [f"{'n':>8} {'seconds':>10} {'peak aux B':>11} {'depth':>6}  count"]
    for r in rep["rows"]:
        lines.append(f"{r['n']:>8} {r['seconds']:>10.4f} {r['peak_aux_bytes']:>11} {r['max_depth']:>6}  {r['count']}")
    lines.append(f"log-log slope: {rep['slope']:.3f}" if rep["slope"] is not None else "log-log slope: n/a")
    lines.append(f"peak auxiliary bytes constant across n: {'yes' if rep['aux_constant'] else 'no'}")
    _emit(rep, args.json, "\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------
# obstructions
# --------------------------------------------------------------------------

def cmd_obstructions(args) -> int:
    from importlib import resources

    from .minors import CATALOG_FILE, catalog_text, derive_h1_h2, minimal_dtd3_graphs, obstructions

    if args.minimal:
        for g in minimal_dtd3_graphs(args.minimal):
            print(f"n={g.n} m={g.m} " + " ".join(f"{u}-{v}" for u, v in g.edges()))
        return EXIT_OK
    if args.derive or args.write:
        h1, h2 = derive_h1_h2()
        text = catalog_text(h1, h2)
        if args.write:
            with open(args.write, "w", encoding="utf-8") as fh:
                fh.write(text)
        packaged = dict(obstructions())
        same = [canonical_form(packaged["H1"]), canonical_form(packaged["H2"])] == \
            [canonical_form(h1), canonical_form(h2)]
        print(text)
        print(f"# derived catalog {'matches' if same else 'DIFFERS FROM'} the packaged copy")
        return EXIT_OK if same else EXIT_FAIL
    print(resources.files("degencount.data").joinpath(CATALOG_FILE).read_text(encoding="utf-8"))
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degencount",
                                description="Constant-space pattern counting in degenerate graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count hom/sub/ind of a pattern in a host")
    c.add_argument("mode", choices=["hom", "sub", "ind"])
    c.add_argument("--pattern", required=True, help="edge-list file or name like C6, K3,4, S3")
    c.add_argument("--host", required=True, help="edge-list file or graph name")
    c.add_argument("--json", action="store_true")
    c.add_argument("--oracle", action="store_true", help="cross-check with brute force when feasible")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--emit-expansion", metavar="PATH", help="write the hom expansion ('-' for stderr)")
    c.set_defaults(func=cmd_count)

    a = sub.add_parser("analyze", help="structural report for a pattern")
    a.add_argument("--pattern", required=True)
    a.add_argument("--json", action="store_true")
    a.add_argument("--all", action="store_true", help="list every orientation")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="oracle equivalence and bound suites")
    v.add_argument("--max-pattern", type=int, default=4, help="largest connected pattern size")
    v.add_argument("--hosts", type=int, default=5, help="number of random hosts")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--json", action="store_true")
    v.add_argument("--inject-mutation", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="random d-degenerate host as an edge list")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="timing sweep with a log-log slope fit")
    b.add_argument("--pattern", required=True)
    b.add_argument("--n", type=int, nargs="+", default=[1000, 10000, 100000])
    b.add_argument("--d", type=int, default=2)
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--orientation", choices=["all", "worst"], default="all",
                   help="sum over all orientations, or only the deepest one")
    b.add_argument("--repeat", type=int, default=1, help="runs per size; the fastest is kept")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("obstructions", help="print the dtd<=2 obstruction catalog")
    o.add_argument("--derive", action="store_true", help="re-derive H1/H2 and compare")
    o.add_argument("--write", metavar="PATH", help="write a freshly derived catalog")
    o.add_argument("--minimal", type=int, metavar="N",
                   help="list every minimal dtd-3 connected graph on at most N vertices")
    o.set_defaults(func=cmd_obstructions)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except GraphTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except EdgeListError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonIntegralCount as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
